from dataclasses import replace

from hqc128.params import hqc128, validate


def test_hqc128_constants():
    p = hqc128()
    assert p.n == 17669
    assert p.n1 == 46
    assert p.k == 16
    assert p.delta == 15
    assert p.rm_multiplicity == 3
    assert p.n2 == 384
    assert p.w == 66
    assert p.w_r == 75
    assert p.w_e == 75
    assert p.seed_bytes == 40
    assert p.ss_bytes == 64


def test_code_fits_inside_ring():
    p = hqc128()
    assert p.n1 * p.n2 == 17664
    assert p.n1 * p.n2 <= p.n


def test_word_counts():
    p = hqc128()
    assert p.words_n == 277
    assert p.words_2n == 553
    assert p.n_bytes == 2209


def test_shipped_set_is_valid():
    assert validate(hqc128()) == []


def test_even_n_is_flagged():
    violations = validate(replace(hqc128(), n=17664))
    assert any("odd" in v for v in violations)


def test_overweight_is_flagged():
    violations = validate(replace(hqc128(), w=80))
    assert any(v.startswith("w <=") for v in violations)
    assert validate(replace(hqc128(), w_r=76))
    assert validate(replace(hqc128(), w_e=76))


def test_word_count_mismatch_is_flagged():
    assert any("words_n" in v for v in validate(replace(hqc128(), words_n=276)))
    assert any("words_2n" in v for v in validate(replace(hqc128(), words_2n=600)))


def test_rs_redundancy_consistency():
    violations = validate(replace(hqc128(), delta=14))
    assert any("2*delta" in v for v in violations)


def test_validate_is_pure():
    p = replace(hqc128(), n=17664, w=80)
    assert validate(p) == validate(p)
