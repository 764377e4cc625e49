from .lexical import gzip_ratio, hdd, mattr, mtld, token_entropy_bits, ttr

__all__ = ["ttr", "mattr", "hdd", "mtld", "token_entropy_bits", "gzip_ratio"]
