"""Planted systems, free parameters, the two X3 branches and the real-representation oracle."""
import numpy as np

from quatsylv import FreeParameters, Solver, oracle_check, pad_special, shape_query
from quatsylv.generate import generate, perturb

sys, planted = generate("sys03", {1: (2, 3), 2: (3, 3), 3: (2, 2), 4: (3, 1), 5: (2, 2)}, seed=1)
print(sys)
print("free parameters:", shape_query(sys))

solver = Solver(sys)
rng = np.random.default_rng(0)
for draw in range(3):
    sol = solver.solve(FreeParameters.random(solver.param_shapes, rng))
    gap = (sol.X[3] - sol.X3_alternate).norm() / sol.scale
    print(f"draw {draw}: residual {sol.max_relative_residual:.1e}, X3 branch gap {gap:.1e}")

bad = perturb(sys, 0)
print("perturbed: check", Solver(bad).certificate.verdict, "oracle", oracle_check(bad).consistent)

# a three-equation system solved directly and through its four-equation parent
small, _ = generate("special01", 2, seed=3)
direct = Solver(small).solve()
padded = Solver(pad_special(small)).solve()
print(f"special01 direct {direct.max_relative_residual:.1e}, padded {padded.max_relative_residual:.1e}")
