"""In-place associative permutation sort."""
