"""
Degrees with beta(d) > n
========================

beta(d) is the least number of powers 2^j - 1 summing to d.  For the two
families of top-layer degrees, beta(d) > n reduces to counting the 1-bits of
d + n, which is cheap even when d has tens of thousands of bits.
"""

from motivic_hit.arithmetic import (
    BitNat,
    alpha_of,
    beta_of,
    check_family_nm3,
    scan_family_nm4,
)

for d in (1, 5, 10, 26, 1014):
    print(d, "alpha", alpha_of(d), "beta", beta_of(d))

# k = n - 4 with n = 2^r + 1
for rec in scan_family_nm4(2, 9):
    print(rec.r, rec.n, rec.d.shorthand(), "alpha(d+n) =", rec.alpha_d_plus_n, "certified:", rec.beta_exceeds_n)

big = scan_family_nm4(16, 16)[0]
print("r = 16:", big.d.bit_length(), "bits,", big.d.shorthand())

# k = n - 3 whenever n - 2 has at least three 1-bits
for n in (9, 13, 16, 17, 30):
    rec = check_family_nm3(n)
    print(n, BitNat(n - 2).bits, rec.beta_exceeds_n, rec.kameko_condition)
