"""The line-oriented session language behind the command line tool.

A script is a sequence of statements separated by newlines or ``;``.  ``#``
starts a comment.  Definitions are silent; every query prints its result.
Operands are separated by whitespace, so polynomial literals given as
operands must not contain spaces (bind them to a name first, or write them
compactly); the right-hand side of an assignment may contain spaces.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import testideal as ti
from .divisors import PrimeTable, QDivisor, divisor_of, format_divisor, parse_divisor
from .errors import FrobtraceError, ParseError, ResourceExceeded
from .extension import (
    MonogenicExtension,
    PresentedExtension,
    TraceLike,
    ext_monogenic,
    ext_presented,
    surjectivity_certificate,
    tracelike_from_values,
)
from .factor import univariate_factor
from .frobenius import cartier_apply, fedder_test, frob_root, pe_decompose
from .groebner import Ideal, configured, format_ideal, limits
from .pmaps import (
    PMapKey,
    TransposeResult,
    commute_check,
    delta_of_key,
    iterate_map,
    key_from_values,
    key_of_delta,
    transpose_key,
)
from .polys import Poly, PolyRing

Extension = MonogenicExtension | PresentedExtension


@dataclass
class Options:
    p: int | None = None
    vars: str | None = None
    order: str = "grevlex"
    max_e: int | None = None
    step_cap: int | None = None
    json: bool = False
    seed: int = 0


@dataclass
class Output:
    line: int
    statement: str
    text: str

    def to_json(self) -> str:
        return json.dumps({"line": self.line, "statement": self.statement, "output": self.text}, ensure_ascii=False)


@dataclass
class CheckResult:
    label: str
    passed: bool
    expected: str
    actual: str
    tag: str


class SessionError(Exception):
    """Wraps an error with the script line on which it happened."""

    def __init__(self, line: int, error: Exception):
        self.line = line
        self.error = error
        super().__init__(f"line {line}: {type(error).__name__}: {error}")

    @property
    def exit_code(self) -> int:
        return exit_code_for(self.error)


def exit_code_for(error: Exception) -> int:
    if isinstance(error, ParseError):
        return 2
    if isinstance(error, ResourceExceeded):
        return 3
    return 1


def split_statements(script: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(script.splitlines(), start=1):
        text = raw.split("#", 1)[0]
        for part in text.split(";"):
            part = part.strip()
            if part:
                out.append((lineno, part))
    return out


def split_args(text: str) -> list[str]:
    """Split on whitespace outside (), [] and {}."""
    args, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch.isspace() and depth == 0:
            if cur:
                args.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError("unbalanced brackets", len(text))
    if cur:
        args.append("".join(cur))
    return args


def split_top(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return [p for p in parts if p]


def render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Ideal):
        return format_ideal(value)
    if isinstance(value, QDivisor):
        return format_divisor(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, PolyRing):
        return f"{value} order={value.order}"
    if isinstance(value, (MonogenicExtension, PresentedExtension)):
        return f"{value.kind} extension of degree {value.n} over {value.base}"
    if isinstance(value, ti.Hypersurface):
        return f"hypersurface {value.h} in {value.ambient}"
    return str(value)


class Session:
    def __init__(self, options: Options | None = None):
        self.options = options or Options()
        self.rings: dict[str, PolyRing] = {}
        self.tables: dict[PolyRing, PrimeTable] = {}
        self.ring: PolyRing | None = None
        self.values: dict[str, Any] = {}
        self.outputs: list[Output] = []
        self.checks: list[CheckResult] = []
        self._line = 0
        self._stmt = ""
        o = self.options
        if o.p is not None or o.vars is not None:
            if o.p is None or o.vars is None:
                raise FrobtraceError("--p and --vars must be given together")
            self._set_ring("default", PolyRing.make(o.p, o.vars, o.order))

    # -- running -------------------------------------------------------------------

    def run(self, script: str) -> list[Output]:
        with configured(max_e=self.options.max_e, step_cap=self.options.step_cap, seed=self.options.seed):
            for lineno, stmt in split_statements(script):
                self._line, self._stmt = lineno, stmt
                try:
                    self.execute(stmt)
                except SessionError:
                    raise
                except (FrobtraceError, ValueError, ZeroDivisionError, OverflowError, ArithmeticError) as exc:
                    raise SessionError(lineno, exc) from exc
        return self.outputs

    def emit(self, text: str) -> None:
        self.outputs.append(Output(self._line, self._stmt, text))

    def transcript(self) -> str:
        if self.options.json:
            return "".join(o.to_json() + "\n" for o in self.outputs)
        return "".join(o.text + "\n" for o in self.outputs)

    def execute(self, stmt: str) -> None:
        m = re.match(r"([A-Za-z_][A-Za-z0-9_]*)\s*=(?!=)\s*(.*)\Z", stmt, re.S)
        if m and m.group(1) not in COMMANDS:
            name, rhs = m.group(1), m.group(2).strip()
            if not rhs:
                raise ParseError(f"missing value for {name}", len(stmt))
            self.values[name] = self.evaluate(rhs)
            return
        word, _, rest = stmt.partition(" ")
        handler = COMMANDS.get(word) or VALUE_COMMANDS.get(word)
        if handler is None:
            raise ParseError(f"unknown command {word!r}", 0)
        result = handler(self, rest.strip())
        if result is not None:
            self.emit(render(result))

    def evaluate(self, rhs: str) -> Any:
        word, _, rest = rhs.partition(" ")
        if word in VALUE_COMMANDS:
            return VALUE_COMMANDS[word](self, rest.strip())
        if word in COMMANDS and word not in ("ring",):
            return COMMANDS[word](self, rest.strip())
        if rhs.startswith("ideal("):
            return self.ideal(rhs)
        return self.poly(rhs)

    # -- rings and lookup ----------------------------------------------------------

    def _set_ring(self, name: str, ring: PolyRing) -> None:
        self.rings[name] = ring
        self.ring = ring

    def current_ring(self) -> PolyRing:
        if self.ring is None:
            raise FrobtraceError("no ring declared; start with 'ring p=<prime> vars=<names>'")
        return self.ring

    def ring_named(self, name: str) -> PolyRing:
        if name not in self.rings:
            raise FrobtraceError(f"unknown ring {name!r}")
        return self.rings[name]

    def table(self, ring: PolyRing) -> PrimeTable:
        if ring not in self.tables:
            self.tables[ring] = PrimeTable(ring)
        return self.tables[ring]

    def lookup(self, name: str, kind: type | tuple[type, ...]) -> Any | None:
        v = self.values.get(name)
        return v if isinstance(v, kind) else None

    def poly_env(self, ring: PolyRing) -> dict[str, Poly]:
        env = {}
        for k, v in self.values.items():
            if isinstance(v, Poly) and (v.ring == ring or set(v.ring.vars) <= set(ring.vars) or v.is_constant()):
                env[k] = v if v.ring == ring else _move(v, ring)
        return env

    def poly(self, text: str, ring: PolyRing | None = None) -> Poly:
        ring = ring or self.current_ring()
        bound = self.lookup(text, Poly)
        if bound is not None:
            return bound if bound.ring == ring else _move(bound, ring)
        return ring.parse(text, self.poly_env(ring))

    def ideal(self, text: str, ring: PolyRing | None = None) -> Ideal:
        ring = ring or self.current_ring()
        bound = self.lookup(text, Ideal)
        if bound is not None:
            return bound if bound.ring == ring else bound.to_ring(ring)
        if text.startswith("ideal(") and text.endswith(")"):
            return Ideal(ring, [self.poly(g, ring) for g in split_top(text[6:-1])])
        return Ideal(ring, [self.poly(text, ring)])

    def divisor(self, text: str, ring: PolyRing | None = None) -> QDivisor:
        ring = ring or self.current_ring()
        bound = self.lookup(text, QDivisor)
        if bound is not None:
            return bound
        return parse_divisor(ring, text)

    def extension(self, name: str) -> Extension:
        ext = self.lookup(name, (MonogenicExtension, PresentedExtension))
        if ext is None:
            raise FrobtraceError(f"{name!r} is not an extension")
        return ext

    def pmap(self, text: str, ring: PolyRing | None = None, e: int = 1) -> PMapKey:
        v = self.values.get(text)
        if isinstance(v, PMapKey):
            return v
        if isinstance(v, TransposeResult):
            return v.key
        return PMapKey.of(self.poly(text, ring), e)

    def tracelike(self, ext: MonogenicExtension, text: str | None) -> TraceLike:
        if text is None:
            return ext.trace_key()
        v = self.values.get(text)
        if isinstance(v, TraceLike):
            return v
        return TraceLike(ext, self.poly(text, ext.total))

    # -- argument helpers ----------------------------------------------------------

    def parse_args(self, rest: str) -> tuple[list[str], dict[str, str]]:
        pos, kw = [], {}
        for a in split_args(rest):
            m = re.match(r"([A-Za-z_]+)=(.*)\Z", a, re.S)
            if m and not a.startswith("ideal("):
                kw[m.group(1)] = m.group(2)
            else:
                pos.append(a)
        return pos, kw

    def need(self, pos: list[str], n: int, usage: str) -> None:
        if len(pos) != n:
            raise ParseError(f"usage: {usage}", 0)


def _move(f: Poly, ring: PolyRing) -> Poly:
    try:
        return f.to_ring(ring)
    except FrobtraceError:
        raise FrobtraceError(f"{f} cannot be used in {ring}") from None


def _int(kw: dict[str, str], key: str, default: int) -> int:
    if key not in kw:
        return default
    try:
        return int(kw[key])
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {kw[key]!r}", 0) from None


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational number, got {text!r}", 0) from None


# -- commands --------------------------------------------------------------------------


def cmd_ring(s: Session, rest: str) -> None:
    pos, kw = s.parse_args(rest)
    name = pos[0] if pos else "default"
    if "p" not in kw or "vars" not in kw:
        raise ParseError("usage: ring [name] p=<prime> vars=<v1,v2,...> [order=lex|grevlex]", 0)
    order = kw.get("order", s.options.order)
    if order not in ("lex", "grevlex"):
        raise ParseError(f"unknown order {order!r}", 0)
    try:
        p = int(kw["p"])
    except ValueError:
        raise ParseError(f"p must be an integer, got {kw['p']!r}", 0) from None
    try:
        s._set_ring(name, PolyRing.make(p, kw["vars"], order))
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


def cmd_use(s: Session, rest: str) -> None:
    s.ring = s.ring_named(rest.strip())


def cmd_primes(s: Session, rest: str) -> None:
    ring = s.current_ring()
    for text in split_top(rest):
        s.table(ring).add(s.poly(text, ring))


def cmd_show(s: Session, rest: str):
    if rest in s.values:
        return s.values[rest]
    return s.evaluate(rest)


def cmd_gb(s: Session, rest: str):
    return Ideal(s.current_ring(), s.ideal(rest).gb)


def cmd_nf(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, "nf <poly> <ideal>")
    return s.ideal(pos[1]).reduce(s.poly(pos[0]))


def cmd_member(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, "member <poly> <ideal>")
    return s.ideal(pos[1]).contains(s.poly(pos[0]))


def cmd_equal(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, "equal <ideal> <ideal>")
    return s.ideal(pos[0]).equals(s.ideal(pos[1]))


def _binary_ideal(op: Callable[[Ideal, Ideal], Ideal], name: str):
    def run(s: Session, rest: str):
        pos, _ = s.parse_args(rest)
        s.need(pos, 2, f"{name} <ideal> <ideal>")
        return op(s.ideal(pos[0]), s.ideal(pos[1]))

    return run


def cmd_colon(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, "colon <ideal> <poly-or-ideal>")
    I = s.ideal(pos[0])
    if pos[1].startswith("ideal(") or s.lookup(pos[1], Ideal) is not None:
        return I.colon(s.ideal(pos[1]))
    return I.colon(s.poly(pos[1]))


def cmd_bracket(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "bracket <ideal> e=<n>")
    I = s.ideal(pos[0])
    return I.bracket(I.ring.p ** _int(kw, "e", 1))


def cmd_factor(s: Session, rest: str):
    f = s.poly(rest)
    factors = univariate_factor(f, seed=limits.seed)
    if not factors:
        return str(f.monic() if not f.is_zero() else f)
    lc = f.lc
    parts = [f"({g})" + (f"^{m}" if m > 1 else "") for g, m in factors]
    text = " * ".join(parts)
    return text if lc == 1 else f"{lc} * {text}"


def cmd_decompose(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "decompose <poly> e=<n>")
    dec = pe_decompose(s.poly(pos[0]), _int(kw, "e", 1))
    lines = [f"{b}: {h}" for b, h in sorted(dec.parts.items())]
    return "\n".join(lines) if lines else "0"


def cmd_frobroot(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "frobroot <ideal> e=<n>")
    return frob_root(s.ideal(pos[0]), _int(kw, "e", 1))


def cmd_cartier(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 2, "cartier <key> <ideal> e=<n>")
    return cartier_apply(s.poly(pos[0]), _int(kw, "e", 1), s.ideal(pos[1]))


def cmd_pmap(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 2, "pmap <key-or-map> <poly> [e=<n>]")
    phi = s.pmap(pos[0], None if pos[0] in s.values else s.current_ring(), _int(kw, "e", 1))
    return phi(s.poly(pos[1], phi.ring))


def cmd_fedder(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "fedder <poly-or-ideal> [at=ideal(...)]")
    at = s.ideal(kw["at"]) if "at" in kw else None
    target = s.ideal(pos[0]) if pos[0].startswith("ideal(") or s.lookup(pos[0], Ideal) else s.poly(pos[0])
    return f"F-pure: {render(fedder_test(target, at))}"


def cmd_divisor(s: Session, rest: str):
    ring = s.current_ring()
    return divisor_of(s.poly(rest, ring), s.table(ring))


def cmd_div(s: Session, rest: str):
    return s.divisor(rest.strip())


def cmd_round(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, "round <divisor> ceil|floor")
    return s.divisor(pos[0]).round(pos[1])


def cmd_pullback(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, "pullback <ext> <divisor>")
    ext = s.extension(pos[0])
    return ext.pullback(s.divisor(pos[1], ext.base))


def cmd_compare(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, "compare <divisor> <divisor>")
    return s.divisor(pos[0]).compare(s.divisor(pos[1]))


def cmd_effective(s: Session, rest: str):
    return s.divisor(rest.strip()).is_effective()


def cmd_key(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "key <poly> e=<n>")
    return PMapKey.of(s.poly(pos[0]), _int(kw, "e", 1))


def cmd_pmapvals(s: Session, rest: str):
    """pmapvals e=<n> [v_0, v_1, ...] with values listed over basis exponents in lexicographic order."""
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "pmapvals e=<n> [v, ...]")
    ring = s.current_ring()
    e = _int(kw, "e", 1)
    q = ring.p**e
    text = pos[0]
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("values must be given as [v, ...]", 0)
    vals = [s.poly(v, ring) for v in split_top(text[1:-1])]
    exps = list(itertools.product(range(q), repeat=ring.nvars))
    if len(vals) != len(exps):
        raise FrobtraceError(f"expected {len(exps)} values, got {len(vals)}")
    return key_from_values(ring, e, dict(zip(exps, vals)))


def cmd_delta(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "delta <map> [e=<n>]")
    phi = s.pmap(pos[0], None if pos[0] in s.values else s.current_ring(), _int(kw, "e", 1))
    return delta_of_key(phi, s.table(phi.ring))


def cmd_keyof(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "keyof <divisor> e=<n>")
    return key_of_delta(s.divisor(pos[0]), _int(kw, "e", 1))


def cmd_iterate(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "iterate <map> n=<k>")
    return iterate_map(s.pmap(pos[0], None, _int(kw, "e", 1)), _int(kw, "n", 1))


def cmd_transpose(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 2, "transpose <ext> <map> [trace=<tracelike>]")
    ext = s.extension(pos[0])
    phi = s.pmap(pos[1], ext.base, _int(kw, "e", 1))
    return transpose_key(ext, phi, s.tracelike(ext, kw.get("trace")) if "trace" in kw else None)


def cmd_extends(s: Session, rest: str):
    return cmd_transpose(s, rest).exists


def cmd_commute(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 3, "commute <ext> <map on base> <map on total> [psi=<tracelike>]")
    ext = s.extension(pos[0])
    e = _int(kw, "e", 1)
    phi = s.pmap(pos[1], ext.base, e)
    phibar = s.pmap(pos[2], ext.total, e)
    ok, witness = commute_check(ext, phi, phibar, s.tracelike(ext, kw.get("psi")))
    return "true" if ok else f"false: {witness}"


def cmd_tracelike(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 2, "tracelike <ext> [v_0, ..., v_{n-1}] | tracelike <ext> key=<poly>")
    ext = s.extension(pos[0])
    text = pos[1]
    if text.startswith("[") and text.endswith("]"):
        return tracelike_from_values(ext, [s.poly(v, ext.base) for v in split_top(text[1:-1])])
    return TraceLike(ext, s.poly(text, ext.total))


def cmd_ext(s: Session, rest: str):
    """ext monogenic base=R g=<poly> [total=S map T->.. y->..] | ext presented ambient=A relations=ideal(..) basis=.. basevars=.."""
    pos, kw = s.parse_args(rest)
    if not pos:
        raise ParseError("usage: ext monogenic|presented ...", 0)
    kind = pos[0]
    if kind == "monogenic":
        base = s.ring_named(kw.get("base", "")) if "base" in kw else s.current_ring()
        if "g" not in kw:
            raise ParseError("ext monogenic needs g=<poly in T>", 0)
        images = {}
        for item in pos[1:]:
            if item == "map":
                continue
            if "->" not in item:
                raise ParseError(f"expected <var>-><poly>, got {item!r}", 0)
            k, v = item.split("->", 1)
            images[k.strip()] = v.strip()
        tname = kw.get("gen", "T")
        if "total" not in kw:
            return ext_monogenic(base, kw["g"], tname=tname)
        total = s.ring_named(kw["total"])
        images = {k: s.poly(v, total) for k, v in images.items()}
        return ext_monogenic(base, kw["g"], total, images, tname=tname)
    if kind == "presented":
        for key in ("ambient", "relations", "basis", "basevars"):
            if key not in kw:
                raise ParseError(f"ext presented needs {key}=", 0)
        ambient = s.ring_named(kw["ambient"])
        rel = s.ideal(kw["relations"], ambient)
        basis = [s.poly(b, ambient) for b in split_top(kw["basis"])]
        return ext_presented(ambient, rel, basis, split_top(kw["basevars"]), _int(kw, "degree", 6))
    raise ParseError(f"unknown extension kind {kind!r}", 0)


def _ext_and_elem(s: Session, rest: str, usage: str):
    pos, _ = s.parse_args(rest)
    s.need(pos, 2, usage)
    ext = s.extension(pos[0])
    return ext, s.poly(pos[1], ext.element_ring())


def cmd_trace(s: Session, rest: str):
    ext, f = _ext_and_elem(s, rest, "trace <ext> <element>")
    return ext.trace(f)


def cmd_norm(s: Session, rest: str):
    ext, f = _ext_and_elem(s, rest, "norm <ext> <element>")
    return ext.norm(f)


def cmd_tracekey(s: Session, rest: str):
    return s.extension(rest.strip()).trace_key()


def cmd_tracematrix(s: Session, rest: str):
    rows = s.extension(rest.strip()).trace_matrix()
    return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows)


def cmd_ram(s: Session, rest: str):
    return s.extension(rest.strip()).ramification_divisor()


def cmd_tame(s: Session, rest: str):
    pos, _ = s.parse_args(rest)
    if not pos:
        raise ParseError("usage: tame <ext> [prime ...]", 0)
    ext = s.extension(pos[0])
    primes = [s.poly(P, ext.base) for P in pos[1:]] or None
    rows = ext.tameness(primes)
    return "\n".join(f"[{P}] -> [{C}]: index {k}, {kind}" for P, C, k, kind in rows)


def cmd_traceimage(s: Session, rest: str):
    return s.extension(rest.strip()).trace_image_ideal()


def cmd_surjective(s: Session, rest: str):
    return s.extension(rest.strip()).is_trace_surjective()


def cmd_certificate(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "certificate <ext> [delta=<divisor>]")
    ext = s.extension(pos[0])
    delta = s.divisor(kw["delta"], ext.base) if "delta" in kw else None
    return surjectivity_certificate(ext, delta)


def cmd_hypersurface(s: Session, rest: str):
    ring = s.current_ring()
    return ti.Hypersurface(ring, s.poly(rest.strip(), ring))


def _triple(s: Session, pos: list[str], kw: dict[str, str]):
    target: Any = s.current_ring()
    if pos:
        hyp = s.lookup(pos[0], ti.Hypersurface)
        if hyp is not None:
            target = hyp
        elif pos[0] in s.rings:
            target = s.rings[pos[0]]
        else:
            raise FrobtraceError(f"{pos[0]!r} is neither a ring nor a hypersurface")
    amb = ti._ambient(target)
    delta = s.divisor(kw["delta"], amb) if "delta" in kw else None
    a = s.ideal(kw["a"], amb) if "a" in kw else None
    t = _frac(kw["t"]) if "t" in kw else (Fraction(1) if a is not None else Fraction(0))
    return target, delta, a, t


def cmd_tau(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    target, delta, a, t = _triple(s, pos, kw)
    return ti.tau(target, delta, a, t, s.table(ti._ambient(target)))


def cmd_tauhyp(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "tauhyp <poly> [c=<test element>] [a=<ideal> t=<rational>]")
    ring = s.current_ring()
    c = s.poly(kw["c"], ring) if "c" in kw else None
    a = s.ideal(kw["a"], ring) if "a" in kw else None
    t = _frac(kw["t"]) if "t" in kw else Fraction(1 if a is not None else 0)
    return ti.tau_hypersurface(ring, s.poly(pos[0], ring), c, a, t)


def cmd_sfr(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    target, delta, a, t = _triple(s, pos, kw)
    at_origin = kw.get("at") == "origin"
    return ti.is_strongly_F_regular(target, delta, a, t, at_origin, s.table(ti._ambient(target)))


def cmd_sfp(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    target, delta, a, t = _triple(s, pos, kw)
    return ti.is_sharply_F_pure(target, delta, a, t, _int(kw, "e", limits.max_e))


def cmd_fpt(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "fpt <poly> e=<n>")
    return ti.fpt_estimate(s.poly(pos[0]), _int(kw, "e", 3))


def cmd_nu(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    s.need(pos, 1, "nu <poly> e=<n>")
    e = _int(kw, "e", 1)
    return str(ti.nu_sequence(s.poly(pos[0]), e)[e])


def _ext_triple(s: Session, rest: str, usage: str):
    pos, kw = s.parse_args(rest)
    if not pos:
        raise ParseError(f"usage: {usage}", 0)
    ext = s.extension(pos[0])
    delta = s.divisor(kw["delta"], ext.base) if "delta" in kw else None
    a = s.ideal(kw["a"], ext.base) if "a" in kw else None
    t = _frac(kw["t"]) if "t" in kw else Fraction(1 if a is not None else 0)
    return ext, kw, delta, a, t


def cmd_transform(s: Session, rest: str):
    ext, kw, delta, a, t = _ext_triple(s, rest, "transform <ext> [delta=..] [a=.. t=..] [trace=..]")
    trace = s.tracelike(ext, kw["trace"]) if "trace" in kw else None
    return ti.verify_transformation(ext, trace, delta, a, t)


def cmd_intersectcheck(s: Session, rest: str):
    ext, _, delta, a, t = _ext_triple(s, rest, "intersectcheck <ext> [delta=..]")
    return ti.verify_intersection(ext, delta, a, t)


def cmd_containment(s: Session, rest: str):
    ext, _, delta, a, t = _ext_triple(s, rest, "containment <ext> [delta=..]")
    return ti.verify_containment_extension(ext, delta, a, t)


def cmd_skoda(s: Session, rest: str):
    pos, kw = s.parse_args(rest)
    if "f" not in kw:
        raise ParseError("usage: skoda [ring] delta=<divisor> f=<poly>", 0)
    target, delta, a, t = _triple(s, pos, kw)
    delta = delta if delta is not None else QDivisor.zero(target)
    return ti.skoda_check(target, delta, s.poly(kw["f"], target), a, t, s.table(target))


def cmd_check(s: Session, rest: str):
    """check <label> :: <statement> => <expected> @<tag>"""
    m = re.match(r"(\S+)\s*::\s*(.*?)\s*=>\s*(.*?)\s*(?:@(\w+))?\Z", rest, re.S)
    if m is None:
        raise ParseError("usage: check <label> :: <statement> => <expected> @<tag>", 0)
    label, stmt, expected, tag = m.group(1), m.group(2), m.group(3), m.group(4) or "direct"
    before = len(s.outputs)
    s.execute(stmt)
    produced = s.outputs[before:]
    del s.outputs[before:]
    actual = " | ".join(line.strip() for o in produced for line in o.text.splitlines())
    passed = _normalise(actual) == _normalise(expected)
    s.checks.append(CheckResult(label, passed, expected, actual, tag))
    status = "PASS" if passed else "FAIL"
    detail = actual if passed else f"expected {expected}, got {actual}"
    s.emit(f"{status} {label}: {detail}")


def _normalise(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def cmd_verify(s: Session, rest: str):
    from .fixtures import verify_builtin

    summary = verify_builtin(rest.strip() or "all")
    for line in summary.lines:
        s.emit(line)
    if not summary.all_passed:
        raise FrobtraceError(f"{summary.failed} fixture check(s) failed")


COMMANDS: dict[str, Callable[[Session, str], Any]] = {
    "ring": cmd_ring,
    "use": cmd_use,
    "primes": cmd_primes,
    "show": cmd_show,
    "gb": cmd_gb,
    "nf": cmd_nf,
    "member": cmd_member,
    "equal": cmd_equal,
    "sum": _binary_ideal(lambda I, J: I + J, "sum"),
    "product": _binary_ideal(lambda I, J: I * J, "product"),
    "intersect": _binary_ideal(lambda I, J: I.intersect(J), "intersect"),
    "colon": cmd_colon,
    "bracket": cmd_bracket,
    "factor": cmd_factor,
    "decompose": cmd_decompose,
    "frobroot": cmd_frobroot,
    "cartier": cmd_cartier,
    "pmap": cmd_pmap,
    "fedder": cmd_fedder,
    "divisor": cmd_divisor,
    "round": cmd_round,
    "pullback": cmd_pullback,
    "compare": cmd_compare,
    "effective": cmd_effective,
    "delta": cmd_delta,
    "keyof": cmd_keyof,
    "iterate": cmd_iterate,
    "transpose": cmd_transpose,
    "extends": cmd_extends,
    "commute": cmd_commute,
    "trace": cmd_trace,
    "norm": cmd_norm,
    "tracekey": cmd_tracekey,
    "tracematrix": cmd_tracematrix,
    "ram": cmd_ram,
    "tame": cmd_tame,
    "traceimage": cmd_traceimage,
    "surjective": cmd_surjective,
    "certificate": cmd_certificate,
    "tau": cmd_tau,
    "tauhyp": cmd_tauhyp,
    "sfr": cmd_sfr,
    "sfp": cmd_sfp,
    "fpt": cmd_fpt,
    "nu": cmd_nu,
    "transform": cmd_transform,
    "intersectcheck": cmd_intersectcheck,
    "containment": cmd_containment,
    "skoda": cmd_skoda,
    "check": cmd_check,
    "verify": cmd_verify,
}

VALUE_COMMANDS: dict[str, Callable[[Session, str], Any]] = {
    "div": cmd_div,
    "key": cmd_key,
    "pmapvals": cmd_pmapvals,
    "tracelike": cmd_tracelike,
    "ext": cmd_ext,
    "hypersurface": cmd_hypersurface,
}


def run_session(script: str, options: Options | None = None) -> str:
    """Run a script and return its transcript (raises :class:`SessionError`)."""
    s = Session(options)
    s.run(script)
    return s.transcript()
