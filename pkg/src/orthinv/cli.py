"""Command-line front end.

    orthinv --tower "Q(5) > unram(2) > ram(2; twist=0)" --json
    orthinv --oracle 3,2
"""

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from .errors import BudgetExceeded, OrthinvError, ParseError
from .field import CLASS_NAMES, Ram, TowerSpec, Unram, build_field, check_tame, norm_image_in_square_classes

SCHEMA_VERSION = 1

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z]+)|(?P<sym>[()>;=@,]))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", *_line_col(text, start))
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def fail(self, message):
        raise ParseError(message, *_line_col(self.text, self.peek()[2]))

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            self.fail(f"expected {want!r}, found {got!r}")
        self.i += 1
        return tok[1]

    def integer(self):
        return int(self.take("int"))

    def step(self):
        word = self.take("word").lower()
        self.take("sym", "(")
        if word == "unram":
            f = self.integer()
            self.take("sym", ")")
            return Unram(f)
        if word == "ram":
            e = self.integer()
            twist = 0
            if self.peek()[1] == ";":
                self.take("sym", ";")
                if self.take("word").lower() != "twist":
                    self.i -= 1
                    self.fail("expected 'twist'")
                self.take("sym", "=")
                twist = self.integer()
            self.take("sym", ")")
            return Ram(e, twist)
        self.i -= 2
        self.fail(f"unknown step {word!r}; use unram(f) or ram(e; twist=k)")

    def tower(self):
        if self.take("word") not in ("Q", "Qp"):
            self.i -= 1
            self.fail("a tower starts with Q(p)")
        self.take("sym", "(")
        p = self.integer()
        self.take("sym", ")")
        steps = []
        while self.peek()[1] == ">":
            self.take("sym", ">")
            start = self.peek()[2]
            s = self.step()
            if s.__dict__.get("e", 1) < 1 or s.__dict__.get("f", 1) < 1:
                raise ParseError("step degree must be positive", *_line_col(self.text, start))
            steps.append(s)
        precision = None
        if self.peek()[1] == "@":
            self.take("sym", "@")
            precision = self.integer()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p, steps, precision


def parse_tower(text, precision=None):
    """`Q(p) > unram(f) > ram(e; twist=k) ... @N` to a TowerSpec."""
    p, steps, prec = _Parser(text).tower()
    prec = precision if precision is not None else prec
    kwargs = {} if prec is None else {"precision": prec}
    try:
        spec = TowerSpec(p, tuple(steps), **kwargs)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from exc
    check_tame(spec)
    return spec


# -- reports


def _fmt(x):
    return str(x)


def _matrix(M):
    return [[_fmt(a) for a in row] for row in M]


def tower_section(ctx):
    E = ctx.E
    return {
        "spec": str(E.spec),
        "p": E.p,
        "steps": [str(s) for s in E.spec.steps],
        "precision": E.spec.precision,
        "n": E.n,
        "e": E.e,
        "f": E.f,
        "y": ctx.y,
        "residue_poly": [int(getattr(c, "index", c)) for c in E.residue_poly],
    }


def run_report(spec, phi_minus_one=1, oracle=None, buildings=False, seed=0):
    from .multiplicity import CharacterFlag, analyze, distinction_report

    flag = CharacterFlag(phi_minus_one)
    ctx = analyze(spec)
    rep = distinction_report(ctx, flag)
    census = [{
        "x": repr(c.x),
        "nu": _matrix(c.nu.rows),
        "g_orbit": str(c.g_label),
        "hasse": c.hasse,
        "disc0_class": CLASS_NAMES[c.disc0_class],
        "mu": [CLASS_NAMES[k] for k in sorted(c.mu_classes)],
        "mT": c.mT,
        "mZ": c.mZ,
    } for c in ctx.census]
    orbits = [{
        "label": str(r.label),
        "weight": r.weight,
        "split_t_orbits": len(r.census),
        "mT": r.mT,
        "dim": r.dim,
    } for r in rep.rows]
    expected_sum = 4 if phi_minus_one == 1 else 0
    expected_special = ctx.y if phi_minus_one == 1 else 0
    index = 4 // len(norm_image_in_square_classes(ctx.E, 0))
    checks = {
        "pure_inner_sum": rep.sum_full == expected_sum,
        "special_orthogonal_sum": rep.sum_special == expected_special,
        "mZ_equals_y_mT": all(c.mZ == ctx.y * c.mT for c in ctx.census),
        "census_size_equals_y": len(ctx.census) == ctx.y,
        "norm_image_index_equals_y": index == ctx.y,
    }
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tower": tower_section(ctx),
        "phi_minus_one": phi_minus_one,
        "census": census,
        "orbits": orbits,
        "sums": {"pure_inner": rep.sum_full, "special_orthogonal": rep.sum_special},
        "checks": checks,
    }
    if oracle is not None:
        doc["oracle"] = oracle_command(*oracle)
    if buildings:
        doc["buildings"] = buildings_section(ctx, seed)
    doc["ok"] = _all_ok(doc)
    return doc


def _all_ok(doc):
    ok = all(doc.get("checks", {}).values())
    for key in ("oracle", "buildings"):
        if key in doc:
            ok = ok and doc[key].get("complete", True) and all(doc[key].get("checks", {}).values())
    return ok


def oracle_command(q, n, budget=None):
    from .fforacle import (FFContext, ff_congruence_census, ff_involution_orbits,
                           ff_similitude_check, ff_split_t_orbits)

    section = {"q": q, "n": n}
    try:
        ctx = FFContext(q, n, budget)
        section["budget"] = ctx.budget
        section["mode"] = "group-scan" if ctx.group_scan_feasible else "symmetric-space"
        census = ff_congruence_census(ctx)
        section["congruence_classes"] = census.classes
        section["orbit_sizes"] = census.orbit_sizes
        section["invertible_symmetric"] = census.total
        orbits = ff_involution_orbits(ctx)
        section["involution_orbits"] = orbits
        split = ff_split_t_orbits(ctx)
        section["split_t_orbits"] = sorted(split.per_g_orbit.values())
        section["norm_surjective"] = split.norm_surjective
        sims = [ff_similitude_check(ctx, o.nu) for o in split.orbits]
        section["similitude"] = [{"mT": s.mT, "mZ": s.mZ, "mu": s.mu, "mu_torus": s.mu_torus,
                                  "witness": s.witness} for s in sims]
    except BudgetExceeded as exc:
        section.update(complete=False, error=str(exc), partial=exc.partial)
        return section
    parity = 1 if n % 2 else 2
    section["complete"] = True
    section["checks"] = {
        "two_congruence_classes": census.classes == 2,
        "involution_orbits": orbits == parity,
        "one_split_t_orbit_per_g_orbit": len(split.per_g_orbit) == orbits
        and all(v == 1 for v in split.per_g_orbit.values()),
        "mT_is_one": all(s.mT == 1 for s in sims),
        "mZ_by_parity": all(s.mZ == parity for s in sims),
    }
    return section


def buildings_section(ctx, seed=0):
    from .buildings import (AdditiveNorm, FiltrationModel, block_shape, chain_from_norm,
                            norm_from_chain, norms_agree, observed_block_shape)

    E = ctx.E
    rng = random.Random(seed)
    e, f, p = E.e, E.f, E.p
    model = FiltrationModel(p, e, f)
    shapes, agree = {}, True
    for k in range(3):
        r = Fraction(k, e)
        shape = block_shape(e, f, r)
        seen = observed_block_shape(model, r)
        agree = agree and shape.lattice == seen.lattice and shape.quotient == seen.quotient
        shapes[str(r)] = {"lattice": shape.lattice,
                          "quotient": {f"{a},{b}": t for (a, b), t in sorted(shape.quotient.items())}}
    n = E.n
    c = tuple(Fraction(i // f, e) for i in range(n))
    x = AdditiveNorm(p, [[int(i == j) for j in range(n)] for i in range(n)], c)
    chain = chain_from_norm(x)
    sample = [[rng.randint(-p * p, p * p) for _ in range(n)] for _ in range(10)]
    ideal_chain = all(
        _same_lattice(p, chain.lattices[k], model.ideal_lattice(k)) for k in range(chain.rank))
    return {
        "e": e,
        "f": f,
        "block_shapes": shapes,
        "valuation_chain_rank": chain.rank,
        "checks": {
            "block_shapes_match_membership": agree,
            "valuation_chain_is_ideal_chain": ideal_chain and chain.rank == e,
            "round_trip": norms_agree(x, norm_from_chain(chain), sample),
        },
    }


def _same_lattice(p, A, B):
    from .buildings import _qp, lattice_equal
    return lattice_equal(_qp(p), A, B)


def render_text(doc):
    lines = []
    if "tower" in doc:
        t = doc["tower"]
        lines.append(f"tower {t['spec']}  n={t['n']} e={t['e']} f={t['f']} y={t['y']}")
        lines.append(f"phi(-1) = {doc['phi_minus_one']:+d}")
        lines.append("split T-orbits:")
        for c in doc["census"]:
            lines.append(f"  {c['g_orbit']:<22} hasse={c['hasse']:+d} mT={c['mT']} mZ={c['mZ']}  x={c['x']}")
        lines.append("G-orbits:")
        for o in doc["orbits"]:
            lines.append(f"  {o['label']:<22} weight={o['weight']} dim={o['dim']}")
        s = doc["sums"]
        lines.append(f"sums: pure inner {s['pure_inner']}, special orthogonal {s['special_orthogonal']}")
    if "oracle" in doc:
        o = doc["oracle"]
        if o.get("complete"):
            lines.append(f"oracle q={o['q']} n={o['n']} ({o['mode']}): classes={o['congruence_classes']} "
                         f"involution orbits={o['involution_orbits']} split T-orbits={o['split_t_orbits']}")
        else:
            lines.append(f"oracle q={o['q']} n={o['n']} incomplete: {o.get('error')}")
    if "buildings" in doc:
        b = doc["buildings"]
        lines.append(f"buildings e={b['e']} f={b['f']}: " + ", ".join(
            f"{k}={'ok' if v else 'FAIL'}" for k, v in b["checks"].items()))
    for section in ("checks",):
        for k, v in doc.get(section, {}).items():
            lines.append(f"check {k}: {'ok' if v else 'FAIL'}")
    lines.append("OK" if doc.get("ok") else "FAILED")
    return "\n".join(lines)


def _parse_oracle(text):
    try:
        q, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected q,n (for example 3,2)")
    return q, n


def build_parser():
    ap = argparse.ArgumentParser(prog="orthinv", description="Orthogonal-involution invariants of tame towers.")
    ap.add_argument("--tower", help='tower such as "Q(5) > unram(2) > ram(2; twist=0) @32"')
    ap.add_argument("--phi-minus-one", type=int, choices=(1, -1), default=1)
    ap.add_argument("--precision", type=int)
    ap.add_argument("--oracle", type=_parse_oracle, metavar="q,n")
    ap.add_argument("--budget", type=int, help="oracle work cap (default: ORTHINV_BUDGET or 1e7)")
    ap.add_argument("--buildings", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    return ap


def _emit(doc, as_json, out):
    if as_json:
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write(render_text(doc) + "\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.tower is None and args.oracle is None:
            raise OrthinvError("nothing to do: give --tower and/or --oracle")
        if args.tower is not None:
            spec = parse_tower(args.tower, args.precision)
            doc = run_report(spec, args.phi_minus_one, None, args.buildings, args.seed)
            if args.oracle is not None:
                doc["oracle"] = oracle_command(*args.oracle, budget=args.budget)
                doc["ok"] = _all_ok(doc)
        else:
            doc = {"schema_version": SCHEMA_VERSION,
                   "oracle": oracle_command(*args.oracle, budget=args.budget)}
            doc["ok"] = _all_ok(doc)
    except OrthinvError as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            err.update(line=exc.line, column=exc.col)
        if args.json:
            _emit({"schema_version": SCHEMA_VERSION, "ok": False, "error": err}, True, out)
        else:
            out.write(f"error: {err['type']}: {err['message']}\n")
        return 2
    _emit(doc, args.json, out)
    return 0 if doc["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
