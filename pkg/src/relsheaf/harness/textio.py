"""Reading and writing the plain-text formats for lattices, presheaves and relation families.

A file is a sequence of sections.  Each section starts with a header line
``[lattice]``, ``[presheaf]`` or ``[reltrans]``; ``#`` starts a comment.

    [lattice]
    name = B4
    elements = bot a b top
    leq = bot<=a bot<=b a<=top b<=top

    [presheaf]
    lattice = B4
    carrier top = x y
    restrict top->a : x=p y=p

    [reltrans]
    lattice = H2
    mode = inf
    carrier = 1 2 3
    M: 1 2 = top
    fiber: 2 1 = bot top

A ``lattice =`` reference is resolved against earlier sections of the same
file, then the built-in fixtures, then as a path relative to the file.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from ..errors import ParseError, UnknownElement
from ..heyting import HeytingAlgebra, build_algebra
from ..presheaf import Presheaf, make_presheaf
from ..pretrans import Mode, PreTransformation
from ..relations import FiniteSet

KINDS = ("lattice", "presheaf", "reltrans")


@dataclass
class Loaded:
    kind: str
    name: str
    obj: object
    mode: Mode | None = None
    lattice: str | None = None


@dataclass
class _Section:
    kind: str
    line: int
    body: list  # (line number, stripped text)


def _split_sections(text: str, path) -> list[_Section]:
    sections = []
    current = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            kind = line[1:-1].strip()
            if kind not in KINDS:
                raise ParseError(n, f"unknown section [{kind}]", path)
            current = _Section(kind, n, [])
            sections.append(current)
        elif current is None:
            raise ParseError(n, "content before the first section header", path)
        else:
            current.body.append((n, line))
    if not sections:
        raise ParseError(1, "no sections found", path)
    return sections


def _key_value(n, line, path):
    if "=" not in line:
        raise ParseError(n, f"expected 'key = value', got {line!r}", path)
    key, value = line.split("=", 1)
    return key.strip(), value.strip()


class _Reader:
    def __init__(self, path=None, base_dir=None):
        self.path = path
        self.base_dir = Path(base_dir) if base_dir else (Path(path).parent if path else None)
        self.lattices: dict[str, HeytingAlgebra] = {}

    def resolve_lattice(self, name: str, n: int) -> HeytingAlgebra:
        if name in self.lattices:
            return self.lattices[name]
        if fixture_exists(name):
            obj = load_fixture(name)
            if isinstance(obj, HeytingAlgebra):
                return obj
        if self.base_dir is not None:
            candidate = self.base_dir / name
            if candidate.is_file():
                obj = load(candidate)
                if isinstance(obj, HeytingAlgebra):
                    return obj
        raise ParseError(n, f"unknown lattice {name!r}", self.path)

    def element(self, H: HeytingAlgebra, name: str, n: int) -> int:
        try:
            return H.index(name)
        except UnknownElement:
            raise ParseError(n, f"{name!r} is not an element of {H.label}", self.path) from None

    def read(self, text: str) -> list[Loaded]:
        out = []
        for sec in _split_sections(text, self.path):
            item = getattr(self, "_" + sec.kind)(sec)
            if item.kind == "lattice":
                self.lattices[item.name] = item.obj
            out.append(item)
        return out

    def _lattice(self, sec: _Section) -> Loaded:
        name, elements, pairs = None, None, []
        for n, line in sec.body:
            key, value = _key_value(n, line, self.path)
            if key == "name":
                name = value
            elif key == "elements":
                elements = value.split()
                if not elements:
                    raise ParseError(n, "elements list is empty", self.path)
            elif key == "leq":
                for tok in value.split():
                    if "<=" not in tok:
                        raise ParseError(n, f"expected 'x<=y', got {tok!r}", self.path)
                    a, b = tok.split("<=", 1)
                    pairs.append((n, a, b))
            else:
                raise ParseError(n, f"unknown key {key!r} in [lattice]", self.path)
        if elements is None:
            raise ParseError(sec.line, "lattice section has no elements line", self.path)
        known = set(elements)
        for n, a, b in pairs:
            for x in (a, b):
                if x not in known:
                    raise ParseError(n, f"{x!r} is not a declared element", self.path)
        name = name or "H"
        H = build_algebra(elements, [(a, b) for _, a, b in pairs], label=name)
        return Loaded("lattice", name, H)

    def _presheaf(self, sec: _Section) -> Loaded:
        name, H, lattice = "F", None, None
        carriers, restrictions = {}, {}
        for n, line in sec.body:
            if line.startswith("carrier "):
                if H is None:
                    raise ParseError(n, "carrier given before the lattice", self.path)
                head, _, rest = line[len("carrier "):].partition("=")
                h = self.element(H, head.strip(), n)
                if h in carriers:
                    raise ParseError(n, f"carrier {head.strip()} given twice", self.path)
                members = rest.split()
                if len(set(members)) != len(members):
                    raise ParseError(n, "repeated carrier member", self.path)
                carriers[h] = members
            elif line.startswith("restrict "):
                if H is None:
                    raise ParseError(n, "restriction given before the lattice", self.path)
                head, sep, rest = line[len("restrict "):].partition(":")
                if not sep or "->" not in head:
                    raise ParseError(n, "expected 'restrict h->k : x=y ...'", self.path)
                hs, ks = head.split("->", 1)
                h, k = self.element(H, hs.strip(), n), self.element(H, ks.strip(), n)
                if not H.leq(k, h):
                    raise ParseError(n, f"{ks.strip()} is not below {hs.strip()}", self.path)
                mapping = {}
                for tok in rest.split():
                    x, eq, y = tok.partition("=")
                    if not eq:
                        raise ParseError(n, f"expected 'x=y', got {tok!r}", self.path)
                    if x not in carriers.get(h, ()):
                        raise ParseError(n, f"{x!r} is not in the carrier at {hs.strip()}", self.path)
                    if y not in carriers.get(k, ()):
                        raise ParseError(n, f"{y!r} is not in the carrier at {ks.strip()}", self.path)
                    mapping[x] = y
                restrictions[h, k] = mapping
            else:
                key, value = _key_value(n, line, self.path)
                if key == "name":
                    name = value
                elif key == "lattice":
                    lattice = value
                    H = self.resolve_lattice(value, n)
                else:
                    raise ParseError(n, f"unknown key {key!r} in [presheaf]", self.path)
        if H is None:
            raise ParseError(sec.line, "presheaf section has no lattice line", self.path)
        return Loaded("presheaf", name, make_presheaf(H, carriers, restrictions, name), lattice=lattice)

    def _reltrans(self, sec: _Section) -> Loaded:
        name, H, lattice, mode = "R", None, None, None
        source = target = None
        entries, fibers = [], []
        for n, line in sec.body:
            if line.startswith("M:") or line.startswith("fiber:"):
                kind, _, rest = line.partition(":")
                pair, eq, value = rest.partition("=")
                parts = pair.split()
                if not eq or len(parts) != 2:
                    raise ParseError(n, f"expected '{kind}: b a = ...'", self.path)
                (entries if kind == "M" else fibers).append((n, parts[0], parts[1], value.split()))
                continue
            key, value = _key_value(n, line, self.path)
            if key == "name":
                name = value
            elif key == "lattice":
                lattice = value
                H = self.resolve_lattice(value, n)
            elif key == "mode":
                try:
                    mode = Mode(value)
                except ValueError:
                    raise ParseError(n, f"mode must be 'ord' or 'inf', got {value!r}", self.path) from None
            elif key in ("carrier", "source", "target"):
                members = value.split()
                if len(set(members)) != len(members):
                    raise ParseError(n, "repeated member", self.path)
                if key in ("carrier", "source"):
                    source = FiniteSet(name, members)
                if key == "carrier":
                    target = source
                elif key == "target":
                    target = FiniteSet(name + "'", members)
            else:
                raise ParseError(n, f"unknown key {key!r} in [reltrans]", self.path)
        if H is None:
            raise ParseError(sec.line, "reltrans section has no lattice line", self.path)
        if source is None or target is None:
            raise ParseError(sec.line, "reltrans section needs a carrier (or source and target)", self.path)
        if entries and fibers:
            raise ParseError(entries[0][0], "mixing 'M:' and 'fiber:' lines", self.path)
        if mode is None:
            mode = Mode.ORD if fibers else Mode.INF
        if entries:
            table = [[H.down_mask[H.bottom]] * len(source) for _ in target]
        else:
            table = [[0] * len(source) for _ in target]
        for n, b, a, value in entries + fibers:
            if b not in target or a not in source:
                raise ParseError(n, f"({b}, {a}) is outside the carriers", self.path)
            if entries:
                if len(value) != 1:
                    raise ParseError(n, "a matrix entry is a single element", self.path)
                mask = H.down_mask[self.element(H, value[0], n)]
            else:
                mask = 0
                for v in value:
                    mask |= 1 << self.element(H, v, n)
            table[target.position(b)][source.position(a)] = mask
        tau = PreTransformation(H, source, target, table)
        if mode is Mode.ORD and not tau.order_preserving:
            raise ParseError(sec.line, "declared mode ord but some fiber is not down-closed", self.path)
        if mode is Mode.INF and not tau.infima_preserving:
            raise ParseError(sec.line, "declared mode inf but some fiber is not principal", self.path)
        return Loaded("reltrans", name, tau, mode=mode, lattice=lattice)


def parse_document(text: str, path=None, base_dir=None) -> list[Loaded]:
    return _Reader(path, base_dir).read(text)


def load_document(path) -> list[Loaded]:
    path = Path(path)
    return parse_document(path.read_text(), str(path))


def load(path):
    """The object described by the last section of the file."""
    return load_document(path)[-1].obj


_FIXTURES = resources.files(__package__) / "fixtures"
_FIXTURE_CACHE: dict[str, list[Loaded]] = {}


def fixture_names() -> list[str]:
    return sorted(p.name[:-4] for p in _FIXTURES.iterdir() if p.name.endswith(".txt"))


def fixture_exists(name: str) -> bool:
    return (_FIXTURES / f"{name}.txt").is_file()


def fixture_document(name: str) -> list[Loaded]:
    if name not in _FIXTURE_CACHE:
        if not fixture_exists(name):
            raise KeyError(f"no fixture named {name!r}")
        text = (_FIXTURES / f"{name}.txt").read_text()
        _FIXTURE_CACHE[name] = parse_document(text, f"<fixture {name}>")
    return _FIXTURE_CACHE[name]


def load_fixture(name: str):
    """Fixtures are parsed once, so repeated loads return the same objects."""
    return fixture_document(name)[-1].obj


def fixture_text(name: str) -> str:
    return (_FIXTURES / f"{name}.txt").read_text()


def format_lattice(H: HeytingAlgebra, name: str | None = None) -> str:
    covers = sorted(H.covers, key=lambda p: (p[1], p[0]))
    lines = ["[lattice]", f"name = {name or H.label}", "elements = " + " ".join(H.names)]
    if covers:
        lines.append("leq = " + " ".join(f"{H.names[k]}<={H.names[h]}" for h, k in covers))
    return "\n".join(lines) + "\n"


def format_presheaf(F: Presheaf, lattice_name: str, name: str | None = None,
                    name_of: Callable = str) -> str:
    H = F.algebra
    lines = ["[presheaf]", f"name = {name or F.label}", f"lattice = {lattice_name}"]
    order = [sorted(F.carriers[h], key=name_of) for h in H.elements]
    for h in H.elements:
        lines.append(f"carrier {H.names[h]} = " + " ".join(name_of(x) for x in order[h]))
    for h, k in sorted(H.covers):
        if not order[h]:
            continue
        body = " ".join(f"{name_of(x)}={name_of(F.restrict(x, h, k))}" for x in order[h])
        lines.append(f"restrict {H.names[h]}->{H.names[k]} : {body}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def format_reltrans(tau: PreTransformation, mode: Mode, lattice_name: str, name: str = "R",
                    name_of: Callable = str) -> str:
    H = tau.algebra
    lines = ["[reltrans]", f"name = {name}", f"lattice = {lattice_name}", f"mode = {Mode(mode).value}"]
    if tau.is_endo():
        lines.append("carrier = " + " ".join(name_of(x) for x in tau.source))
    else:
        lines.append("source = " + " ".join(name_of(x) for x in tau.source))
        lines.append("target = " + " ".join(name_of(x) for x in tau.target))
    inf = Mode(mode) is Mode.INF
    for j, b in enumerate(tau.target):
        for i, a in enumerate(tau.source):
            m = tau.fibers[j][i]
            if inf:
                e = H.sup_mask(m)
                if e != H.bottom:
                    lines.append(f"M: {name_of(b)} {name_of(a)} = {H.names[e]}")
            elif m:
                elems = " ".join(H.names[h] for h in H.elements if m >> h & 1)
                lines.append(f"fiber: {name_of(b)} {name_of(a)} = {elems}")
    return "\n".join(lines) + "\n"
