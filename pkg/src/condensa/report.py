"""Plain-text and JSON reports for the command-line tool.

Every report function returns ``(lines, data)``: the text lines and a
JSON-serializable dict with the same content. Output is deterministic.
"""
from __future__ import annotations

from math import isqrt

from . import action as ac
from . import cohomology as co
from . import groups as gr
from . import library
from .condense import condense, enumerate_etale, etale_aut_group, orthogonal_complement
from .errors import CapExceeded, ValidationError
from .metric import MetricGroup, identify_metric, modular_data
from .universal import UniversalScenario, analyze, cross_check_abelian


def _n(k, word, plural=None):
    return f"{k} {word if k == 1 else (plural or word + 's')}"


def _check_cap(what, size, cap):
    if cap is not None and size > cap:
        raise CapExceeded(what, size, cap)


def group_name(G) -> str:
    return library.identify(G)[1]


def group_key(G) -> str:
    return library.identify(G)[0]


def _theory_name(M: MetricGroup) -> str:
    name = identify_metric(M)
    return name if name is not None else f"unnamed, order {M.order}"


def _subset(M: MetricGroup, elems) -> list[str]:
    return [M.label(x) for x in sorted(elems, key=M.group.index)]


# ---------------------------------------------------------------------------


def modular_data_report(M: MetricGroup, cap=None):
    _check_cap("modular-data", M.order, cap)
    md = modular_data(M)
    n = md.order
    r = isqrt(n)
    norm = f"1/{r}" if r * r == n else f"1/sqrt({n})"
    exact_phases = all(v.den in (1, 2, 4) for row in md.s_exponents for v in row)
    lines = [f"metric group {M.group} of order {n} ({_theory_name(M)})",
             "labels: " + " ".join(md.labels),
             "T = diag(" + ", ".join(v.phase() for v in md.t) + ")",
             "T exponents: " + " ".join(str(v) for v in md.t)]
    if exact_phases:
        width = max(len(v.phase()) for row in md.s_exponents for v in row)
        lines.append(f"S = {norm} x")
        for row in md.s_exponents:
            lines.append("  " + " ".join(v.phase().rjust(width) for v in row))
    else:
        lines.append(f"S = {norm} x exp(2 pi i s), with s =")
        width = max(len(str(v)) for row in md.s_exponents for v in row)
        for row in md.s_exponents:
            lines.append("  " + " ".join(str(v).rjust(width) for v in row))
    data = {
        "group": list(M.group.factors), "order": n, "theory": identify_metric(M),
        "labels": list(md.labels), "normalization": norm,
        "t": [str(v) for v in md.t],
        "s": [[str(v) for v in row] for row in md.s_exponents],
    }
    return lines, data


def etale_report(M: MetricGroup, reference=None, notes=(), cap=None):
    _check_cap("etale", M.order, cap)
    algs = enumerate_etale(M, cap)
    lines = [f"{len(algs)} connected étale algebras in {_theory_name(M)}:"]
    rows = []
    width = max([24] + [len(A.describe()) for A in algs])
    for A in algs:
        chars = etale_aut_group(M, A)
        aut = gr.as_cayley(chars.group.to_cayley())
        ct = condense(M, A)
        cond = _theory_name(ct.result)
        rows.append({"support": _subset(M, A.support.elements), "order": A.order,
                     "aut": group_key(aut), "aut_order": chars.group.order,
                     "condensed": identify_metric(ct.result), "condensed_order": ct.result.order})
        lines.append(f"  A = {A.describe():<{width}} Aut ≅ {group_name(aut):<8} condensed: {cond}")
    data = {"algebras": rows}
    if reference is not None:
        more, cmp = compare_reference(M, reference, rows)
        lines += more
        data["reference"] = cmp
    if notes:
        lines.append("notes:")
        lines += [f"  {n}" for n in notes]
        data["notes"] = list(notes)
    return lines, data


def compare_reference(M: MetricGroup, ref, rows):
    """Compare computed twists and algebras with published tables; report mismatches as notes."""
    lines = []
    out = {}
    if ref.twists:
        agree = 0
        bad = []
        for i, r in enumerate(ref.rows):
            for j, c in enumerate(ref.columns):
                x = M.group.add(M.parse_element(r), M.parse_element(c))
                if str(M.twist(x)) == ref.twists[i][j]:
                    agree += 1
                else:
                    bad.append(f"{r}{c}")
        total = len(ref.rows) * len(ref.columns)
        lines.append(f"twist table: {agree}/{total} entries agree with the reference")
        out["twists_agree"] = agree
        out["twists_total"] = total
        out["twists_mismatch"] = bad
    if ref.algebras:
        computed = {frozenset(r["support"]): r for r in rows}
        matched, unmatched_ref = [], []
        used = set()
        for support, cond, aut in ref.algebras:
            key = frozenset(support)
            r = computed.get(key)
            if r is not None and r["condensed"] == cond and r["aut"] == aut:
                matched.append(" + ".join(support))
                used.add(key)
            else:
                unmatched_ref.append((support, cond, aut))
        lines.append(f"algebra table: {len(matched)}/{len(ref.algebras)} rows match a computed algebra exactly")
        flags = []
        for support, cond, aut in unmatched_ref:
            elems = {M.parse_element(s) for s in support}
            closed = frozenset(M.group.span(elems)) == frozenset(elems)
            same_cols = [" + ".join(r["support"]) for k, r in computed.items()
                         if k not in used and r["condensed"] == cond and r["aut"] == aut]
            why = "support is not closed under fusion" if not closed else "no computed algebra with this support"
            flag = (f"label discrepancy: reference row {' + '.join(support)} ({cond}, Aut {aut}): {why}; "
                    f"unmatched computed algebras with the same columns: {', '.join(same_cols) or 'none'}")
            flags.append(flag)
            lines.append("  " + flag)
        out["rows_matched"] = matched
        out["flags"] = flags
    return lines, out


def condense_report(M: MetricGroup, A, cap=None):
    _check_cap("condense", M.order, cap)
    ct = condense(M, A)
    R = ct.result
    perp = orthogonal_complement(M, A.support)
    lines = [f"A = {A.describe()}",
             f"B-perp ({perp.order} elements): " + " ".join(_subset(M, perp.elements)),
             f"condensed theory: {R.group} of order {R.order} ({_theory_name(R)})"]
    twists = []
    for y in R.elements:
        twists.append({"label": R.label(y), "representative": M.label(ct.lift(y)), "twist": str(R.twist(y))})
        lines.append(f"  {R.label(y):<10} twist {str(R.twist(y)):<5} ({R.twist(y).phase()})")
    data = {"algebra": _subset(M, A.support.elements), "perp": _subset(M, perp.elements),
            "result_group": list(R.group.factors), "result_order": R.order,
            "theory": identify_metric(R), "elements": twists}
    return lines, data


def _cochain_lines(G, values, label):
    out = []
    for g in range(G.order):
        for h in range(G.order):
            v = values(g, h)
            if v is not None:
                out.append(f"  {label}({G.label(g)},{G.label(h)}) = {v}")
    return out


def _first_obstruction_lines(rep: ac.ActionReport):
    action, A = rep.action, rep.algebra
    M, G = action.metric, action.G
    g, b = rep.first_witness
    chars = etale_aut_group(M, A)
    aut = group_name(chars.group.to_cayley())
    line = (f"FAILED: first obstruction; alpha({G.label(g)}) sends {M.label(b)} to "
            f"{M.label(action.alpha[g](b))}, so g(A) is not A; Aut_C(A) ≅ {aut}")
    return line, {"verdict": "FAILED", "witness": {"g": G.label(g), "element": M.label(b),
                                                   "image": M.label(action.alpha[g](b))},
                  "aut": group_key(chars.group.to_cayley())}


def obstruction_report(action: ac.CategoricalAction, A, w=None, cap=None):
    _check_cap("obstruction", action.G.order * A.order, cap)
    rep = ac.analyze_action(action, A) if w is None else None
    if rep is not None and not rep.first_obstruction:
        line, data = _first_obstruction_lines(rep)
        return [line], data
    ob = rep.obstruction if rep is not None else _direct(action, A, w)
    G = action.G
    Bh = ob.module.M
    lines = [f"A = {A.describe()}",
             f"Aut_C(A) ≅ {group_name(Bh.to_cayley())} (characters of B, coordinates {list(Bh.factors)})",
             "first obstruction: passed",
             "restricted cocycle w (nonzero values):"]
    wl = _cochain_lines(G, lambda g, h: str(list(Bh.element(ob.cocycle(g, h)))) if ob.cocycle(g, h) else None, "w")
    lines += wl or ["  none"]
    E = ob.group
    lines.append(f"Aut_{{C^G}}(I(A)) has order {E.order}: {group_name(E)}")
    data = {"aut": group_key(Bh.to_cayley()), "w": [[list(Bh.element(v)) for v in row] for row in ob.cocycle.values],
            "extension_order": E.order, "extension": group_key(E)}
    return lines, data


def _direct(action, A, w_entries):
    chars, module = ac.character_module(action, A)
    G, Bh = action.G, module.M
    table = [[0] * G.order for _ in range(G.order)]
    for g, h, v in w_entries:
        table[g][h] = Bh.index(Bh.normalize(v))
    return ac.extension_from_cocycle(module, co.Cochain2(tuple(map(tuple, table)), G.identity), chars)


def _verdict_line(analysis_preserved, n_split, n_classes, E):
    if analysis_preserved:
        return f"PRESERVED: {_n(n_classes, 'class', 'classes')}; extension ≅ {group_name(E)}"
    return f"BROKEN: {_n(n_split, 'splitting')}; Aut_{{C^G}}(I(A)) ≅ {group_name(E)}"


def splittings_report(action: ac.CategoricalAction, A, w=None, cap=None):
    _check_cap("splittings", action.G.order * A.order, cap)
    if w is not None:
        ob = _direct(action, A, w)
        analysis = ac.equivariant_structures(ob.module, ob.cocycle)
        splits = co.enumerate_splittings(ob.extension)
        classes = co.splitting_classes(ob.extension, splits)
    else:
        rep = ac.analyze_action(action, A)
        if not rep.first_obstruction:
            line, data = _first_obstruction_lines(rep)
            lines = [line]
            sub, data["subgroups"] = _subgroup_table(action, A, cap)
            return lines + sub, data
        ob, analysis, splits, classes = rep.obstruction, rep.analysis, rep.splittings, rep.splitting_classes
    E = ob.group
    G = action.G
    Bh = ob.module.M
    lines = [_verdict_line(analysis.preserved, len(splits), len(classes), E)]
    lines.append(f"{_n(len(analysis.structures), 'equivariant structure')} in {_n(len(analysis.classes), 'class', 'classes')}")
    for i, cls in enumerate(analysis.classes):
        for s in cls:
            vals = ", ".join(f"{G.label(g)}->{list(Bh.element(c))}" for g, c in enumerate(s.chi))
            lines.append(f"  class {i}: chi = {{{vals}}}")
    data = {"verdict": "PRESERVED" if analysis.preserved else "BROKEN",
            "splittings": len(splits), "classes": len(classes), "extension": group_key(E),
            "extension_order": E.order,
            "structures": [[list(Bh.element(c)) for c in s.chi] for s in analysis.structures]}
    if w is None:
        sub, data["subgroups"] = _subgroup_table(action, A, cap)
        lines += sub
    return lines, data


def _subgroup_table(action, A, cap):
    G = action.G
    lines = ["restrictions to subgroups H:"]
    rows = []
    for H in gr.cayley_subgroups(G, cap):
        sub, _ = ac.restrict_action(action, H)
        ok = ac.first_obstruction(sub, A)
        n = len(ac.enumerate_equivariant_structures(sub, A).structures) if ok else 0
        names = "{" + ",".join(G.label(h) for h in sorted(H)) + "}"
        status = _n(n, "equivariant structure") if ok else "first obstruction fails"
        lines.append(f"  H = {names:<24} {status}")
        rows.append({"H": [G.label(h) for h in sorted(H)], "first_obstruction": ok, "structures": n})
    return lines, rows


def induce_report(action: ac.CategoricalAction, A, index=0, cap=None, adjust=False):
    _check_cap("induce", action.G.order * A.order, cap)
    rep = ac.analyze_action(action, A)
    if not rep.first_obstruction:
        line, data = _first_obstruction_lines(rep)
        return [line], data
    structs = rep.analysis.structures
    if not structs:
        line = _verdict_line(False, 0, 0, rep.obstruction.group)
        return [line, "no equivariant structure, so no induced action"], {"verdict": "BROKEN"}
    if not 0 <= index < len(structs):
        raise ValidationError(f"lambda index {index} out of range (0..{len(structs) - 1})", field="lambda")
    induced, ct = ac.induce_condensed_action(action, A, structs[index], adjust=adjust)
    R, G = ct.result, action.G
    how = "omega corrected by the lift of" if adjust else "omega taken as is; isometries independent of"
    lines = [f"induced action on the condensed theory ({_theory_name(R)}, order {R.order}); "
             f"{how} equivariant structure {index}"]
    alpha = {}
    for g in G.generators:
        imgs = {R.label(y): R.label(induced.alpha[g](y)) for y in R.elements}
        alpha[G.label(g)] = imgs
        moved = ", ".join(f"{k}->{v}" for k, v in imgs.items() if k != v) or "identity"
        lines.append(f"  alpha({G.label(g)}): {moved}")
    om = _cochain_lines(G, lambda g, h: R.label(induced.omega_element(g, h)) if induced.omega(g, h) else None,
                        "omega")
    lines += om or ["  omega trivial"]
    data = {"theory": identify_metric(R), "order": R.order, "alpha": alpha,
            "omega": [[R.label(induced.omega_element(g, h)) for h in range(G.order)] for g in range(G.order)],
            "trivial": induced.is_trivial, "structure": index, "adjusted": adjust}
    return lines, data


def universal_report(sc: UniversalScenario, cap=None):
    rep = analyze(sc, cap)
    E, G, N = sc.E, sc.G, gr.as_cayley(sc.N)
    if rep.preserved:
        head = (f"PRESERVED: {_n(len(rep.splittings), 'splitting')} in "
                f"{_n(len(rep.classes), 'class', 'classes')}; E ≅ {group_name(E)}")
    else:
        head = f"BROKEN: 0 splittings; E ≅ {group_name(E)}"
    lines = [head, f"N ≅ {group_name(N)}, G ≅ {group_name(G)}", "restrictions to subgroups H of G:"]
    rows = []
    for H, n in rep.subgroups:
        names = "{" + ",".join(G.label(h) for h in sorted(H)) + "}"
        lines.append(f"  H = {names:<24} {_n(n, 'splitting')}")
        rows.append({"H": [G.label(h) for h in sorted(H)], "splittings": n})
    data = {"verdict": rep.verdict, "splittings": len(rep.splittings), "classes": len(rep.classes),
            "E": group_key(E), "N": group_key(N), "G": group_key(G), "subgroups": rows}
    if N.is_abelian:
        cc = cross_check_abelian(sc, cap)
        lines.append(f"categorical cross-check on Z(Vec(N)): {'agrees' if cc.ok else 'DISAGREES'}; "
                     f"obstruction extension ≅ {group_name(cc.obstruction.group)}, verdict {cc.categorical_verdict}")
        data["cross_check"] = {"ok": cc.ok, "extension": group_key(cc.obstruction.group),
                               "verdict": cc.categorical_verdict}
    return lines, data
