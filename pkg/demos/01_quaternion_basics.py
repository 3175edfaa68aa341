"""Quaternion arithmetic, the complex adjoint, rank and the Moore-Penrose inverse."""
from quatsylv import QuatMatrix, Quaternion, pinv, proj_L, qmul, rank, to_adjoint

i, j, k = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
print("i j =", qmul(i, j), "  j i =", qmul(j, i))

A = QuatMatrix([[1, i], [j, k]])
print("A =", A)
print("adjoint of A:\n", to_adjoint(A).data)
print("rank A =", rank(A))

# the second row is j times the first, so the rank drops to 1
r = [Quaternion(1, 2, 0, 0), Quaternion(0, 1, 1, 0)]
B = QuatMatrix([r, [qmul(j, q) for q in r]])
print("rank B =", rank(B))

Bp = pinv(B)
print("||B B+ B - B|| =", (B @ Bp @ B - B).norm())
print("||B L_B|| =", (B @ proj_L(B)).norm())
