import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic_hit.arithmetic import (
    BitNat,
    alpha_of,
    beta_by_compositions,
    beta_exceeds,
    beta_of,
    check_family_nm3,
    d1_of,
    identity_check,
    records_to_csv,
    records_to_json,
    scan_family_nm4,
    zk_degree,
)
from motivic_hit.monomial import InvalidArgs

import oracles


def test_alpha_examples():
    assert alpha_of(4) == 1
    assert alpha_of(0) == 0
    assert alpha_of(BitNat(2**35 - 2)) == 34


def test_beta_examples():
    assert beta_of(3) == 1
    assert beta_of(5) == 3
    assert beta_of(2) == 2
    with pytest.raises(InvalidArgs):
        beta_of(0)


def test_beta_exceeds_examples():
    assert beta_exceeds(1014, 9)
    assert not beta_exceeds(3, 1)
    assert beta_exceeds(BitNat(2**35 - 35), 33)


def test_beta_against_search_oracle():
    for d in range(1, 40):
        assert beta_of(d) == oracles.beta_by_search(d)


def test_package_dp_agrees_with_test_dp():
    assert beta_by_compositions(512)[1:] == oracles.beta_dp(512)[1:]


def test_zk_degree_examples():
    assert zk_degree(2, 1) == 3
    assert zk_degree(3, 2) == 14
    assert zk_degree(33, 29) == 2**35 - 35
    with pytest.raises(InvalidArgs):
        zk_degree(3, 3)


def test_d1_and_identity():
    assert d1_of(3, 2) == 6 and identity_check(3, 2)
    assert d1_of(2, 1) == 1 and identity_check(2, 1)
    assert all(identity_check(n, k) for n in range(2, 21) for k in range(1, n))


def test_nm4_examples():
    r4, r5, r6 = scan_family_nm4(4, 6)
    assert (r5.n, r5.k, r5.alpha_d_plus_n, r5.beta_exceeds_n) == (33, 29, 34, True)
    assert (r4.n, r4.alpha_d_plus_n, r4.beta_exceeds_n) == (17, 17, False)
    assert (r6.n, r6.alpha_d_plus_n, r6.beta_exceeds_n) == (65, 67, True)
    assert all(r.closed_form_ok and not r.contradiction for r in (r4, r5, r6))


@pytest.mark.parametrize("r", range(1, 17))
def test_family_identity(r):
    n = 2**r + 1
    if n - 4 < 1:
        with pytest.raises(InvalidArgs):
            zk_degree(n, n - 4)
        return
    assert zk_degree(n, n - 4) + n == 2 ** (r + 2**r - 2) - 2


def test_nm3_examples():
    r9 = check_family_nm3(9)
    assert (r9.k, r9.d, r9.alpha_d_plus_n, r9.beta_exceeds_n, r9.kameko_condition) == (6, 1014, 10, True, True)
    r8 = check_family_nm3(8)
    assert not r8.kameko_condition
    r13 = check_family_nm3(13)
    assert (r13.d, r13.alpha_d_plus_n, r13.beta_exceeds_n) == (24562, 14, True)
    with pytest.raises(InvalidArgs):
        check_family_nm3(3)


@given(st.integers(0, 2**1000))
def test_bitnat_decimal_roundtrip(v):
    b = BitNat(v)
    assert BitNat(b.decimal()) == b
    assert BitNat.from_bits(b.bits) == b
    assert not b.bits or b.bits[-1] == 1


def test_bitnat_arithmetic():
    a = BitNat(5)
    assert isinstance(a + 3, BitNat) and isinstance(a << 70, BitNat)
    assert (a << 70) - (a << 70) == 0
    with pytest.raises(ValueError):
        a - 6
    with pytest.raises(ValueError):
        BitNat(-1)
    assert BitNat(2**35 - 35).shorthand() == "2^35 - 35"
    assert BitNat(2**40).shorthand() == "2^40"
    assert BitNat(1014).shorthand() == "1014"


def test_record_serialization():
    recs = scan_family_nm4(5, 6)
    js = records_to_json(recs)
    assert '"d": "2^35 - 35"' in js
    lines = records_to_csv(recs).splitlines()
    assert lines[0].startswith("family,r,n,k,d")
    assert lines[1].startswith("nm4,5,33,29,2^35 - 35,34,True")
