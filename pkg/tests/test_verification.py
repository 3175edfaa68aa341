import numpy as np
import pytest

from quatsylv import (
    CapExceeded,
    CoupledSystem,
    FIXTURE_IDS,
    QuatMatrix,
    ShapeError,
    check,
    oracle_check,
    paper_fixture,
    residual,
    solve,
)
from quatsylv.generate import generate, perturb, random_quat
from quatsylv.verification import _term, fixture_checksums, left_matrices, right_matrices

# pinned when the fixtures were transcribed; any edit must fail loudly
CHECKSUMS = {'ex31.qsys': '4b72115606fdefb681030d0e66393f1661cc621e498717df1f66d9733c8409d2',
 'ex31/X1.qmat': '4de430f08322616a66f353d9063e884db32cf78a5a365fa573d13d201636c8e9',
 'ex31/X2.qmat': 'a7970fd8af10b3c4774653a10059c8f67736690fbd7b1cb0aa9cd8048de6740c',
 'ex31/X3.qmat': '8f52108505579c89ced1973901a95142fbddb395d177f91f91c5ea3975eca03d',
 'ex31/X4.qmat': 'ecf9c76a3b33a9f74e3aac24146503ba35a560bdb46854df8dd931a61435f215',
 'ex31/X5.qmat': 'ecf9c76a3b33a9f74e3aac24146503ba35a560bdb46854df8dd931a61435f215',
 'ex41.qsys': '20455f97b108ec4939295ca19c868e35d28a89ea060fbce0433d8a15cc0d1ec9',
 'ex41/X1.qmat': '45113e8aef3e058d47f63c65653f9cb8a529226ace58be7b903b58088d6a4ff0',
 'ex41/X2.qmat': '837534fe66fd41dfa582974652ee5d06055b434d190801eeea5ca57208b09cf4',
 'ex41/X3.qmat': '0059aea4f32e0a4d00d5ad89296ad453553f57fe3e7a9001399494c8344088ba',
 'ex41/X4.qmat': '9344f66105e3a0270c600af6a1b18bca49342bbd0581ddf6ef9d4fe6564ac379',
 'ex41/X5.qmat': 'e7ae8fded9de7b323ace0da30668e4c6c82dae21134150aa6aa00f7d118c1e31',
 'ex51.qsys': '951156c1f6e6002b9c80cfade5862f27f62323ebbea0844850646b1e70dd7d62',
 'ex51/X1.qmat': 'de6364903fc404627bb0e40ff93aceb33b5fe74f19c3caaa56f5847f8043b2ef',
 'ex51/X2.qmat': 'c164a585d5d99e375356589e5c6be5447e75207fc421dbe40aa7301760ce4232',
 'ex51/X3.qmat': '3653cfb28359d3c95e0be820b1f0a362a5e361169375206c52ee3766f225539e',
 'ex51/X4.qmat': '179f97f6eced6b05c3837c291d18352c458cb62b29d2d8eefa5a9a8c8ad8a0ca',
 'ex51/X5.qmat': 'd4433d08d7361e2ebafe9dabb90d12e28e29dc5d7cbe508e135690de070d4dd2',
 'ex61.qsys': '8fdc29138540bba2eec10437bac092db6a9fed3aecb97f3056171699e4574db5',
 'ex61/X1.qmat': '3b46dea11a81e9a1cc213dc5556406baf9190986ee47c24a018972f06cfa0d5b',
 'ex61/X2.qmat': '93f1e7eeb1bad66d4c23df63943d97767fc9697be3715ef0e1a6f79b6ae54907',
 'ex61/X3.qmat': '4708e58fd143531ca98f80081d34981ec9e86e18a2a484bf31cae20408b3648d',
 'ex61/X4.qmat': '85af265ca5e86faf51b29a11accd253dd5741baf513c772e190abee349e9baf7',
 'ex61/X5.qmat': '24bf87936749c842811b21e6f9697f5502a7139fde776bc2c5bdff757da8ba04',
 'ex71.qsys': '4a75704252086961733b10e3711fb87863270bc2146473e28ecdcb302c6d6df8',
 'ex71/X1.qmat': '6165ad5a672550ef1da0b8ca7f00d0ac42104569712f28207f52d0390cb60ce1',
 'ex71/X2.qmat': '7c2a00a058779f60a1e4ab20f9caedfd91c94b07123beb7b4f1312a9b11c27c2',
 'ex71/X3.qmat': 'fcdac7505d7c5062510bdcb6a43818e2bff694c62bf6fdad70eea55084509fac',
 'ex71/X4.qmat': '79cce0d43d555556de9b32c41bb1cdd2f997b5af96f758bc5f4a5fd542df9b6e',
 'ex71/X5.qmat': '979f314aa3c186a35d1947031f9cbf3d3a10f312e5a14adb736df0e31962ddf6',
 'ranks.json': '81b7a22e03abfdfd6d3b5e14963e2f1eff78fa75b7e06aaa15ac8d9bb004d81f'}


def test_fixture_checksums():
    assert fixture_checksums() == CHECKSUMS


# -- residual -------------------------------------------------------------------

def test_planted_residual():
    sys, planted = generate("sys04", 3, 8)
    assert residual(sys, planted).max_relative <= 1e-13


def test_zero_solution_residual_is_norm_of_c():
    sys, _ = generate("sys02", 2, 4)
    zero = {k: QuatMatrix.zeros(*s) for k, s in sys.unknown_shapes.items()}
    rep = residual(sys, zero)
    assert rep.absolute == pytest.approx([sys[f"C{i}"].norm() for i in range(1, 5)])
    assert rep.relative == pytest.approx([a / rep.scale for a in rep.absolute])


def test_residual_shape_errors():
    sys, planted = generate("sys01", 2, 0)
    X = dict(planted.X)
    X[3] = QuatMatrix.zeros(3, 3)
    with pytest.raises(ShapeError):
        residual(sys, X)
    del X[3]
    with pytest.raises(ShapeError):
        residual(sys, X)


# -- real representation -----------------------------------------------------------

def test_left_right_matrices_reproduce_products(rng):
    A, B = random_quat(rng, 1, 1), random_quat(rng, 1, 1)
    prod = (A @ B).components[0, 0]
    assert np.allclose(left_matrices(A)[0, 0] @ B.components[0, 0], prod)
    assert np.allclose(right_matrices(B)[0, 0] @ A.components[0, 0], prod)


def test_term_operator(rng):
    A, X, B = random_quat(rng, 2, 3), random_quat(rng, 3, 4), random_quat(rng, 4, 2)
    vec = _term(A, B) @ X.components.reshape(-1)
    assert np.allclose(vec, (A @ X @ B).components.reshape(-1))


# -- oracle ------------------------------------------------------------------------

def test_oracle_examples():
    sys, _ = generate("sys02", 2, 17)
    v = oracle_check(sys)
    assert v.consistent and v.relative_residual < 1e-12
    assert residual(sys, v.solution).max_relative < 1e-12
    assert not oracle_check(perturb(sys, 17)).consistent


def test_oracle_all_zero_system():
    Z = QuatMatrix.zeros
    sys = CoupledSystem("sys03", **{f"{c}{i}": Z(2, 2) for i in range(1, 5) for c in "ABC"})
    v = oracle_check(sys)
    assert v.consistent and v.relative_residual == 0.0


def test_oracle_cap():
    sys, _ = generate("sys01", 3, 0)
    assert oracle_check(sys, cap=4 * 9 * 5).consistent
    with pytest.raises(CapExceeded):
        oracle_check(sys, cap=4 * 9 * 5 - 1)


@pytest.mark.parametrize("kind", ["sys01", "sys03", "sys05", "special02"])
def test_oracle_agrees_with_check(kind):
    for seed in range(6):
        sys, _ = generate(kind, 2, seed)
        for s in (sys, perturb(sys, seed)):
            assert oracle_check(s).consistent == check(s).verdict


# -- fixtures ----------------------------------------------------------------------

@pytest.mark.parametrize("fid", FIXTURE_IDS)
def test_fixture_loads(fid):
    f = paper_fixture(fid)
    assert f.system.kind == {"ex31": "sys01", "ex41": "sys02", "ex51": "sys03",
                             "ex61": "sys04", "ex71": "sys05"}[fid]
    assert set(f.solution.X) == {1, 2, 3, 4, 5}
    assert f.printed_ranks


def test_fixture_unknown_id():
    with pytest.raises(KeyError):
        paper_fixture("ex99")


@pytest.mark.parametrize("fid", ["ex31", "ex41", "ex51", "ex61"])
def test_fixture_ranks_reproduced(fid):
    f = paper_fixture(fid)
    assert check(f.system).rank_values() == f.printed_ranks


def test_ex31_combined_rank_and_ex41_quadruple_chain():
    assert paper_fixture("ex31").printed_ranks["(3.10)"] == (9, 9)
    assert check(paper_fixture("ex41").system).rank_values()["(4.5)"] == (3, 3)
    ex61 = check(paper_fixture("ex61").system).rank_values()
    assert [ex61[f"(6.1) i={i}"][0] for i in range(1, 5)] == [6, 4, 4, 3]


@pytest.mark.parametrize("fid", ["ex31", "ex41", "ex51", "ex61"])
def test_fixture_solve(fid):
    sys = paper_fixture(fid).system
    assert solve(sys).max_relative_residual <= 1e-8
    assert oracle_check(sys).consistent


@pytest.mark.parametrize("fid", ["ex51", "ex61"])
def test_printed_solutions_that_verify(fid):
    f = paper_fixture(fid)
    assert residual(f.system, f.solution).max_relative <= 1e-10


def test_ex71_errata_recomputed():
    f = paper_fixture("ex71")
    values = check(f.system).rank_values()
    assert set(f.errata) == {"(7.6)", "(7.7)"}
    for cid, printed in f.errata.items():
        assert values[cid] != (printed, printed)
