"""Square-free sieve toolkit.

Local density computation, Euler-product main terms, the abstract truncated
sieve with exact error bounds, desk-scale value censuses, averaging of
p-adically defined products, and the permutation-group exponent tables.
"""

__version__ = "0.1.0"
