"""Claim registry: parsing the declarative script file and replaying claims.

Claims ship as data in a line-oriented file (see ``data/claims.cfg``): each
section declares an extension object, a claim, or a proof-script step, and
``[cite]`` blocks attach free-text source notes to whatever precedes them.
The runner turns a claim into a :class:`~bbwtilt.tilting.ClaimReport`; the
all-grades certificate always decides a vanishing claim, with a truncated
recomputation kept as a cross-check.

The registry path can be overridden with the ``BBWTILT_REGISTRY``
environment variable.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from importlib import resources

from .cohomology import (
    ExpectedException,
    cohomology_q6,
    cohomology_total,
    crosscheck_certificate,
    prove_vanishing,
)
from .tensor import BundleExpr, parse_expr
from .tilting import (
    ClaimReport,
    ExtObject,
    ExtRules,
    TiltingClaim,
    TransferStep,
    TriangleStep,
    end_compare,
    verify_collection,
    verify_theorem,
)
from .weights import parse_weight


class RegistryError(ValueError):
    """Malformed registry file or unknown claim id."""


@dataclass
class Claim:
    id: str
    kind: str
    fields: dict
    expects: list[ExpectedException] = field(default_factory=list)
    steps: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class Registry:
    objects: dict[str, ExtObject]
    claims: dict[str, Claim]
    path: str

    def claim_ids(self) -> list[str]:
        return list(self.claims)

    def resolve(self, name: str):
        """A summand name is either a registered object or an expression."""
        if name in self.objects:
            return self.objects[name]
        return parse_expr(name)

    def summand_map(self, name: str) -> str:
        """The strict-transform correspondence between the two sides.

        Line bundles flip their twist; extension objects swap sides and
        flip their twist, read off from the registered name.
        """
        if name in self.objects:
            base, twist = _split_name(name)
            flipped = base.replace("+", "#").replace("-", "+").replace("#", "-")
            return flipped + ("(%d)" % -twist if -twist else "")
        e = parse_expr(name)
        if e.gl or not e.twist.is_const:
            raise RegistryError("no transform rule for summand %r" % name)
        t = -int(e.twist.c)
        return "O(%d)" % t if t else "O"


def _split_name(name: str) -> tuple[str, int]:
    if name.endswith(")") and "(" in name:
        base, rest = name.split("(", 1)
        return base, int(rest[:-1])
    return name, 0


def default_registry_path() -> str:
    env = os.environ.get("BBWTILT_REGISTRY")
    if env:
        return env
    return str(resources.files("bbwtilt").joinpath("data/claims.cfg"))


def _sections(text: str):
    """Yield (section name, key-value pairs, raw lines) in file order."""
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            if current is not None:
                yield current
            current = (line[1:-1], [], [])
            continue
        if current is None:
            raise RegistryError("content before the first section: %r" % line)
        if "=" in line and current[0] != "cite":
            key, val = line.split("=", 1)
            current[1].append((key.strip(), val.strip()))
        else:
            current[2].append(line)
    if current is not None:
        yield current


def _parse_expect(text: str) -> ExpectedException:
    kwargs = {"j": None, "dominant": None, "dim": None, "mult": None}
    for tok in text.split():
        key, val = tok.split("=", 1)
        if key == "dominant":
            kwargs["dominant"] = parse_weight(val)
        elif key in ("k", "j", "degree", "dim", "mult"):
            kwargs[key] = int(val)
        else:
            raise RegistryError("unknown expectation field %r" % key)
    return ExpectedException(**kwargs)


def load_registry(path: str | None = None) -> Registry:
    path = path or default_registry_path()
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    objects: dict[str, ExtObject] = {}
    claims: dict[str, Claim] = {}
    last: Claim | None = None
    last_step = None
    for name, kv, lines in _sections(text):
        d = dict(kv)
        if name == "object":
            obj = ExtObject(
                name=d["name"],
                side=d.get("side", "xplus"),
                sub=parse_expr(d["sub"]),
                quot=parse_expr(d["quot"]),
            )
            objects[obj.name] = obj
            last, last_step = None, None
        elif name == "claim":
            expects = [_parse_expect(v) for k, v in kv if k == "expect"]
            claim = Claim(id=d["id"], kind=d["kind"], fields=d, expects=expects)
            if claim.id in claims:
                raise RegistryError("duplicate claim id %r" % claim.id)
            claims[claim.id] = claim
            last, last_step = claim, None
        elif name in ("step", "triangle"):
            target = claims.get(d.get("claim", ""))
            if target is None:
                raise RegistryError("step for unknown claim %r" % d.get("claim"))
            pair = tuple(x.strip() for x in d["pair"].split(","))
            rule = "triangle" if name == "triangle" else d["rule"]
            if rule == "triangle":
                leaves = tuple(
                    tuple(x.strip() for x in v.split(":", 1))
                    for k, v in kv
                    if k == "leaf"
                )
                step = TriangleStep(pair, leaves)
            elif rule == "transfer":
                source = tuple(x.strip() for x in d["source"].split(","))
                step = TransferStep(pair, source, int(d.get("max_degree", 2)))
            else:
                raise RegistryError("unknown step rule %r" % rule)
            target.steps.append(step)
            last, last_step = target, step
        elif name == "cite":
            note = " ".join(lines)
            if last_step is not None:
                idx = last.steps.index(last_step)
                cls = type(last_step)
                last.steps[idx] = cls(
                    **{**last_step.__dict__, "notes": last_step.notes + (note,)}
                )
                last_step = last.steps[idx]
            elif last is not None:
                last.notes.append(note)
            else:
                raise RegistryError("citation with nothing to attach to")
        else:
            raise RegistryError("unknown section [%s]" % name)
    return Registry(objects=objects, claims=claims, path=path)


# ---------------------------------------------------------------------------
# claim execution


class ClaimRunner:
    """Executes registry claims against one shared rules engine."""

    def __init__(self, registry: Registry | None = None, kmax: int = 10):
        self.registry = registry or load_registry()
        self.rules = ExtRules(self.registry.objects)
        self.kmax = kmax

    def run(self, claim_id: str) -> ClaimReport:
        claim = self.registry.claims.get(claim_id)
        if claim is None:
            raise RegistryError("unknown claim id %r" % claim_id)
        t0 = time.perf_counter()
        rep = getattr(self, "_run_" + claim.kind)(claim)
        rep.wall_time = time.perf_counter() - t0
        return rep

    def run_all(self) -> list[ClaimReport]:
        return [self.run(cid) for cid in self.registry.claim_ids()]

    # -- kinds ---------------------------------------------------------------

    def _run_vanishing(self, claim: Claim) -> ClaimReport:
        d = claim.fields
        family = parse_expr(d["family"])
        cert = prove_vanishing(
            family,
            cutoff=int(d.get("cutoff", 0)),
            kmin=int(d.get("kmin", 0)),
            jmin=int(d["jmin"]) if "jmin" in d else None,
            expected=claim.expects,
        )
        rep = ClaimReport(claim=claim.id, verdict="PASS")
        detail = "certificate %s; exceptions: %s" % (
            cert.verdict,
            "; ".join(p.describe() for p in cert.exceptions) or "none",
        )
        rep.add("all-grades certificate for %s" % cert.family, cert.passed, detail)
        if not cert.passed:
            for p in cert.problems:
                rep.add("problem", False, p)
            return rep
        mism = crosscheck_certificate(cert, kmax=self.kmax)
        rep.add(
            "truncated cross-check (grades <= %d)" % self.kmax,
            not mism,
            mism[0] if mism else "agrees with the certificate grade by grade",
        )
        return rep

    def _run_table(self, claim: Claim) -> ClaimReport:
        d = claim.fields
        expr = parse_expr(d["expr"])
        table = cohomology_q6(expr)
        want = {}
        for part in d["groups"].split(","):
            items = dict(tok.split("=") for tok in part.split())
            want[int(items["i"])] = int(items["dim"])
        got = {i: table.group_dim(i) for i in range(0, 7) if table.group_dim(i)}
        rep = ClaimReport(claim=claim.id, verdict="PASS")
        rep.add(
            "cohomology of %s" % expr.display(),
            got == want,
            "groups %r (expected %r)" % (got, want),
        )
        return rep

    def _run_total_dim(self, claim: Claim) -> ClaimReport:
        d = claim.fields
        expr = parse_expr(d["expr"])
        degree, grade, dim = int(d["degree"]), int(d["grade"]), int(d["dim"])
        cert = prove_vanishing(
            _with_grade_factor(expr), cutoff=6, kmin=0, expected=None
        )
        rep = ClaimReport(claim=claim.id, verdict="PASS")
        points = cert.profile.points if cert.profile else []
        total = sum(p.dim * p.mult for p in points if p.degree == degree)
        in_grade = sum(
            p.dim * p.mult
            for p in points
            if p.degree == degree and dict(p.params).get("k") == grade
        )
        others = [p for p in points if p.degree != degree]
        rep.add(
            "positive-degree cohomology of %s" % expr.display(),
            cert.verdict != "INCONCLUSIVE" and not others,
            "; ".join(p.describe() for p in points) or "none",
        )
        rep.add(
            "total dim in degree %d" % degree,
            total == dim and in_grade == dim,
            "dim %d, concentrated in grade %d: %s" % (total, grade, in_grade == total),
        )
        table = cohomology_total(expr, d.get("space", "xplus"), kmax=self.kmax)
        got = table.group_dim(degree)
        rep.add(
            "truncated cross-check (grades <= %d)" % self.kmax,
            got == dim,
            "degree-%d dim %d" % (degree, got),
        )
        return rep

    def _run_collection(self, claim: Claim) -> ClaimReport:
        bundles = [parse_expr(s.strip()) for s in claim.fields["bundles"].split(",")]
        return verify_collection(claim.id, bundles)

    def _tilting_claim(self, claim: Claim) -> TiltingClaim:
        summands = [s.strip() for s in claim.fields["summands"].split(",")]
        return TiltingClaim(claim.id, claim.fields.get("side", "xplus"), summands, claim.steps)

    def _run_tilting(self, claim: Claim) -> ClaimReport:
        return verify_theorem(self.rules, self._tilting_claim(claim), self.registry.resolve)

    def _run_endcompare(self, claim: Claim) -> ClaimReport:
        d = claim.fields
        plus_claim = self.registry.claims[d["plus"]]
        minus_claim = self.registry.claims[d["minus"]]
        plus_names = [s.strip() for s in plus_claim.fields["summands"].split(",")]
        minus_names = [s.strip() for s in minus_claim.fields["summands"].split(",")]
        sigma = {n: self.registry.summand_map(n) for n in plus_names}
        missing = [n for n in plus_names if sigma[n] not in minus_names]
        if missing:
            raise RegistryError("summand map leaves the minus-side list: %r" % missing)
        steps = list(plus_claim.steps) + list(minus_claim.steps)
        return end_compare(
            self.rules,
            [(n, self.registry.resolve(n)) for n in plus_names],
            [(n, self.registry.resolve(n)) for n in minus_names],
            sigma,
            degree=int(d.get("degree", 6)),
            steps=steps,
            resolve=self.registry.resolve,
        )


def _with_grade_factor(e: BundleExpr) -> BundleExpr:
    from .cohomology import all_k_family

    return all_k_family(e)
