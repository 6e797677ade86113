# # The ordered Hamming scheme of depth 2
#
# Vertices are N blocks of two bits, packed into one integer. The "shape" of a
# vertex counts blocks of the form 10 (e1) and blocks whose second bit is set (e2).

from ohwalk.lattice import sites
from ohwalk.scheme import column_size, decode, encode, neighbors, shape_of, verify_bose_mesner

x = encode(["00", "10", "11", "00", "01"])
print("vertex", x, "blocks", decode(x, 5), "shape", shape_of(x, 5))

# # Relations are shapes of differences
#
# Two vertices are related by (i, j) when their XOR has shape (i, j). Each
# relation graph is regular with degree equal to the column size.

N = 3
for s in sites(N):
    print(s, "degree", len(neighbors(0, s, N)), "column size", column_size(N, *s))

# # Products of the two generators
#
# Counting common neighbours of every pair of vertices recovers the structure
# constants of the Bose-Mesner algebra. At N = 4 this is an exhaustive check.

table, report = verify_bose_mesner(4)
print(report.summary())
print("A10 A10 coefficient on A20:", table[((1, 0), (1, 0), (2, 0))])
