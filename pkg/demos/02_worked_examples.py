"""The five bundled worked examples: certificates, solutions and recorded errata."""
from quatsylv import FIXTURE_IDS, Solver, oracle_check, paper_fixture, residual

for fid in FIXTURE_IDS:
    f = paper_fixture(fid)
    solver = Solver(f.system)
    cert = solver.certificate
    values = cert.rank_values()
    print(f"== {fid} ({f.system.kind})")
    for c in cert.rank_conditions:
        printed = f.printed_ranks.get(c.id)
        note = "" if printed == (c.lhs, c.rhs) else f"   <- printed {printed[0]}"
        print("  ", c.describe() + note)
    print("   oracle:", "consistent" if oracle_check(f.system).consistent else "inconsistent")
    print(f"   printed solution residual: {residual(f.system, f.solution).max_relative:.2e}")
    if cert.verdict:
        print(f"   solver residual: {solver.solve().max_relative_residual:.2e}")
    for cid, printed in f.errata.items():
        print(f"   erratum {cid}: printed {printed}, computed {values[cid]}")
