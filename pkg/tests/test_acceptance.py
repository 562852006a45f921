"""Acceptance criteria 1-10, one PASS/FAIL line each.

All comparisons are exact (Q/Z arithmetic, integer counts); there is no
numeric tolerance anywhere. Run with ``pytest tests/test_acceptance.py -v``
or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
from collections import Counter

import pytest

from condensa import action as ac
from condensa import catalog
from condensa import cohomology as co
from condensa import condense as cd
from condensa import groups as gr
from condensa import library
from condensa import metric as me
from condensa import report as rp
from condensa import universal as un
from condensa.config import RandomSuiteConfig
from condensa.sampling import metric_corpus, random_scenario

try:
    from oracles import all_sections, one_cochain_solutions
except ImportError:  # run as a script from the repository root
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    from oracles import all_sections, one_cochain_solutions

SUITE = RandomSuiteConfig()


def built(name):
    b = catalog.get(name).built
    return b.action, b.algebra


# ---------------------------------------------------------------------------
# criteria; each returns (ok, detail)


def criterion_1():
    M = catalog.get("toric-frac-m").built.metric
    md = me.modular_data(M)
    S = [[md.s_exponents[x][y].phase() for y in range(4)] for x in range(4)]
    T = [t.phase() for t in md.t]
    published_S = [["1", "1", "1", "1"], ["1", "1", "-1", "-1"], ["1", "-1", "1", "-1"], ["1", "-1", "-1", "1"]]
    lines, data = rp.modular_data_report(M)
    ok = (md.labels == ("1", "e", "m", "eps") and S == published_S and T == ["1", "1", "1", "-1"]
          and data["normalization"] == "1/2")
    return ok, f"S = {data['normalization']} x {S}, T = diag{tuple(T)}"


def criterion_2():
    rep = ac.analyze_action(*built("toric-swap"))
    M = rep.action.metric
    g, b = rep.first_witness or (None, None)
    ok = rep.verdict == "FAILED" and M.label(b) == "e" and M.label(rep.action.alpha[g](b)) == "m"
    return ok, f"verdict {rep.verdict}; alpha(g) sends e to {M.label(rep.action.alpha[g](b))}"


def criterion_3():
    rep = ac.analyze_action(*built("toric-frac-m"))
    E = rep.obstruction.group
    witness = gr.is_isomorphic(E, gr.cyclic_group(4))
    ok = witness is not None and witness.is_injective and not rep.splittings and rep.verdict == "BROKEN"
    return ok, f"extension order {E.order}, Z4 witness {witness is not None}, {len(rep.splittings)} splittings, {rep.verdict}"


def criterion_4():
    rep = ac.analyze_action(*built("toric-frac-e"))
    E = rep.obstruction.group
    klein = gr.is_isomorphic(E, library.get("Z2xZ2")) is not None
    ok = klein and len(rep.splittings) == 2 and len(rep.splitting_classes) == 2 and rep.verdict == "PRESERVED"
    named = dict(me.named_metric_groups())
    Z4 = catalog.get("zvec-z4-tables").built.metric
    toric = cd.condense(Z4, cd.make_etale(Z4, ["a^2"])).result
    semion = cd.condense(Z4, cd.make_etale(Z4, ["a^2m^2"])).result
    ok_toric = me.find_isometry(toric, named["Z(Vec(Z2))"]) is not None
    ok_sem = me.find_isometry(semion, named["Z(Sem)"]) is not None
    ok = ok and ok_toric and ok_sem
    return ok, (f"extension Z2xZ2 {klein}, {len(rep.splittings)} splittings in {len(rep.splitting_classes)} classes; "
                f"<a^2> -> toric code {ok_toric}, <a^2m^2> -> double semion {ok_sem}")


def criterion_5():
    sc = catalog.get("zvec-z4-tables")
    M = sc.built.metric
    published_twists = [["1", "1", "1", "1"], ["1", "i", "-1", "-i"], ["1", "-1", "1", "-1"], ["1", "-i", "-1", "i"]]
    table = [[M.twist(M.group.add(M.parse_element(r), M.parse_element(c))).phase()
              for c in ("1", "m", "m^2", "m^3")] for r in ("1", "a", "a^2", "a^3")]
    algs = cd.enumerate_etale(M)
    aut_orders = sorted(cd.etale_aut_group(M, A).group.order for A in algs)
    _, data = rp.etale_report(M, sc.reference, sc.notes)
    computed = Counter((r["condensed"], r["aut"]) for r in data["algebras"])
    published_algebras = Counter((cond, aut) for _, cond, aut in sc.reference.algebras)
    ref = data["reference"]
    ok = (table == published_twists and len(algs) == 7 and aut_orders == [1, 2, 2, 2, 4, 4, 4]
          and computed == published_algebras and len(ref["rows_matched"]) == 5 and len(ref["flags"]) == 2
          and ref["twists_agree"] == 16)
    return ok, (f"twists {ref['twists_agree']}/16, {len(algs)} algebras, Aut orders {aut_orders}, "
                f"outcome columns agree {computed == published_algebras}, {len(ref['flags'])} label discrepancies flagged")


def criterion_6():
    rep = ac.analyze_action(*built("dic12"))
    E = rep.obstruction.group
    z3_z4 = gr.metacyclic(3, 4, -1, 0)
    witness = gr.is_isomorphic(E, z3_z4)
    ok = E.order == 12 and witness is not None and not rep.splittings and rep.verdict == "BROKEN"
    return ok, f"order {E.order}, ≅ Z3⋊Z4 {witness is not None}, {len(rep.splittings)} splittings, {rep.verdict}"


def criterion_7():
    action, A = built("metaplectic")
    M = action.metric
    diag = cd.make_etale(M, [(1, 1)])
    verdicts = [ac.analyze_action(action, B).verdict for B in (diag, A)]
    aut = cd.etale_aut_group(M, A).group
    ok = verdicts == ["FAILED", "FAILED"] and gr.is_isomorphic(aut.to_cayley(), gr.cyclic_group(3)) is not None
    return ok, f"diagonal B {verdicts[0]}, B = <g x g^-1> {verdicts[1]}; Aut_C(A) ≅ Z{aut.order}"


def criterion_8():
    sc = catalog.get("s3-universal").built.universal
    rep = un.analyze(sc)
    cc = un.cross_check_abelian(sc)
    S3 = library.get("S3")
    both = gr.is_isomorphic(cc.obstruction.group, S3) is not None and gr.is_isomorphic(sc.E, S3) is not None
    ok = len(rep.splittings) == 3 and len(rep.classes) == 1 and bool(cc) and both
    return ok, f"{len(rep.splittings)} splittings in {len(rep.classes)} class; cross-check {cc.ok}; both sides S3 {both}"


def criterion_9():
    M = me.trivial_metric_group()
    A = cd.make_etale(M, [])
    counts = []
    for name in ("Z2", "Z4", "S3"):
        action = ac.trivial_action(library.get(name), M)
        for H in gr.cayley_subgroups(action.G):
            sub, _ = ac.restrict_action(action, H)
            counts.append(len(ac.enumerate_equivariant_structures(sub, A).structures))
    ok = all(v == 1 for v in counts)
    return ok, f"{len(counts)} subgroups of Z2, Z4, S3; structure counts {sorted(set(counts))}"


def criterion_10a():
    groups = algebras = 0
    for _, M in metric_corpus(64):
        groups += 1
        for A in cd.enumerate_etale(M, cap=None):
            algebras += 1
            ct = cd.condense(M, A)  # validates nondegeneracy of the result
            perp = cd.orthogonal_complement(M, A.support)
            if not (ct.result.order * A.order ** 2 == M.order and perp.order * A.order == M.order
                    and len(ct.perp.elements) // A.order == ct.result.order):
                return False, f"bookkeeping fails for {A.describe()} in a group of order {M.order}"
            null = [y for y in ct.result.elements[1:]
                    if all(not ct.result.pairing(y, z) for z in ct.result.group.generators)]
            if null:
                return False, f"degenerate condensation of {A.describe()}"
    return True, f"{groups} metric groups (all isometry classes, order <= 64), {algebras} isotropic subgroups"


def criterion_10b():
    agree = brute_checked = preserved = 0
    for i in range(SUITE.scenarios):
        sc = random_scenario(random.Random(SUITE.seed + i), SUITE)
        ob = ac.obstruction_extension(sc.action, sc.algebra)
        splits = co.enumerate_splittings(ob.extension)
        structs = ac.equivariant_structures(ob.module, ob.cocycle).structures
        same = sorted(s.section for s in splits) == sorted(x.section(ob).section for x in structs)
        if ob.order <= 36:
            brute_checked += 1
            same = same and sorted(s.section for s in splits) == all_sections(ob.extension)
        agree += same
        preserved += bool(structs)
    ok = agree == SUITE.scenarios
    return ok, (f"{agree}/{SUITE.scenarios} scenarios agree ({preserved} preserved), "
                f"{brute_checked} also checked by exhaustive section search")


def criterion_10c():
    rng = random.Random(SUITE.seed + 10_000)
    agree = 0
    for i in range(SUITE.shifts):
        sc = random_scenario(random.Random(SUITE.seed + 20_000 + i), SUITE)
        action = sc.action
        coeffs = action.coeffs
        G = action.G
        beta = [0 if g == G.identity else rng.randrange(coeffs.M.order) for g in range(G.order)]
        omega = co.add_cochains(action.omega, co.coboundary(beta, coeffs), coeffs)
        shifted = ac.CategoricalAction(G, action.metric, action.alpha, omega)
        a = ac.obstruction_extension(action, sc.algebra)
        b = ac.obstruction_extension(shifted, sc.algebra)
        f = gr.is_isomorphic(a.group, b.group)
        same_counts = (len(co.enumerate_splittings(a.extension)) == len(co.enumerate_splittings(b.extension)))
        agree += f is not None and f.is_injective and same_counts
    return agree == SUITE.shifts, f"{agree}/{SUITE.shifts} shifted actions give isomorphic extensions"


def _brute_h1(module):
    z1 = one_cochain_solutions(module, lambda g, h: 0)
    b1 = {tuple(module.sub(module.act(g, n), n) for g in range(module.G.order)) for n in range(module.M.order)}
    return len(z1) // len(b1)


def _brute_h2_trivial(module, w):
    return bool(one_cochain_solutions(module, co.neg_cochain(w, module)))


def criterion_10d():
    checked = h1_ok = h2_ok = 0
    for i in range(SUITE.scenarios):
        sc = random_scenario(random.Random(SUITE.seed + i), SUITE)
        ob = ac.obstruction_extension(sc.action, sc.algebra)
        module = ob.module
        if module.M.order ** (module.G.order - 1) > 5000:
            continue
        checked += 1
        rep = ac.analyze_action(sc.action, sc.algebra)
        h2_ok += _brute_h2_trivial(module, ob.cocycle) == rep.analysis.preserved
        if rep.analysis.preserved:
            h1_ok += (_brute_h1(module) == len(rep.splitting_classes) == len(co.h1_classes(module)))
        else:
            h1_ok += 1
    ok = checked > 0 and h1_ok == h2_ok == checked
    return ok, f"{checked} scenarios small enough for brute force; H1 agrees {h1_ok}, H2 vanishing agrees {h2_ok}"


CRITERIA = [
    ("1", "toric code modular data", criterion_1),
    ("2", "toric-swap first obstruction", criterion_2),
    ("3", "toric-frac-m extension Z4, broken", criterion_3),
    ("4", "toric-frac-e two classes; Z4 double condensations", criterion_4),
    ("5", "Z(Vec(Z4)) twist and algebra tables", criterion_5),
    ("6", "Dic12 second obstruction", criterion_6),
    ("7", "metaplectic first obstruction", criterion_7),
    ("8", "S3 universal example", criterion_8),
    ("9", "Landau suite", criterion_9),
    ("10a", "condensation bookkeeping on all metric groups up to order 64", criterion_10a),
    ("10b", "splittings = equivariant structures on random scenarios", criterion_10b),
    ("10c", "coboundary-shift invariance", criterion_10c),
    ("10d", "H1/H2 brute-force oracles", criterion_10d),
]


def evaluate(key, title, fn):
    try:
        ok, detail = fn()
    except Exception as e:  # report the failure as a FAIL line rather than hiding it
        ok, detail = False, f"{type(e).__name__}: {e}"
    return f"{'PASS' if ok else 'FAIL'} criterion {key}: {title} - {detail}", ok


@pytest.mark.parametrize("key,title,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(key, title, fn, capsys):
    line, ok = evaluate(key, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def main() -> int:
    results = [evaluate(*c) for c in CRITERIA]
    for line, _ in results:
        print(line)
    return 0 if all(ok for _, ok in results) else 1


if __name__ == "__main__":
    sys.exit(main())
