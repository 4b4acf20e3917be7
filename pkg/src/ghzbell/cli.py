"""Command line front end.

Every command prints one report, ``{command, config, results, pass}``, and
exits 0 when every check passes, 1 when one fails and 2 on bad usage. Reports
depend only on the command, its options and the seed.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field

import click
import numpy as np

from . import qis as qis_mod
from . import superdense as sd
from . import tables
from . import teleport as tp
from .bases import (
    BitString,
    Party,
    channel_qis,
    channel_teleport,
    fixed_bases,
    omega_basis_qis,
    omega_basis_teleport,
    omega_teleport_placement,
    superdense_basis,
)
from .statevec import (
    ATOL,
    MeasurementBasis,
    StateVector,
    haar_random_state,
    tensor,
    trial_rng,
)
from .verify import (
    Check,
    VerificationReport,
    basis_rank,
    check_orthonormal,
    decompose,
    entanglement_report,
    reconstruct,
    search_correction,
)

SEED_ENV = "GHZBELL_SEED"
MAX_N = {"superdense": 5, "teleport": 5, "qis": 5, "verify": 4}


def kets_json(state: StateVector) -> list[dict]:
    return [{"amp": [a.real, a.imag], "basis": b} for b, a in state.kets()]


@dataclass
class RunConfig:
    command: str
    N: int = 1
    protocol: str | None = None
    trials: int = 1
    seed: int = 0
    enumerate: bool = False
    format: str = "json"
    output: str | None = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "N": self.N,
            "protocol": self.protocol,
            "trials": self.trials,
            "seed": self.seed,
            "enumerate": self.enumerate,
        }


@dataclass
class Report:
    config: RunConfig
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, list[dict]] = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, report: VerificationReport, prefix: str = ""):
        for c in report.checks:
            self.checks.append(Check(prefix + c.name, c.value, c.bound, c.passed, c.relation))

    def to_dict(self) -> dict:
        out = {
            "command": self.config.command,
            "config": self.config.to_dict(),
            "results": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }
        if self.tables:
            out["tables"] = self.tables
        if self.details:
            out["details"] = self.details
        return out

    def render(self) -> str:
        fmt = self.config.format
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["command", "name", "value", "relation", "bound", "pass"])
            for c in self.checks:
                w.writerow([self.config.command, c.name, repr(c.value), c.relation, repr(c.bound), c.passed])
            return buf.getvalue()
        lines = [f"{self.config.command}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  {'ok ' if c.passed else 'BAD'} {c.name}: {c.value:.6g} {c.relation} {c.bound:.6g}")
        for title, rows in self.tables.items():
            if rows and "measured" in rows[0]:
                lines.append(tables.format_table(rows, title))
            else:
                lines.append(title)
                lines.extend("  " + " ".join(str(v) for v in row.values()) for row in rows)
        return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ghzbell-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(report: Report) -> None:
    text = report.render()
    if report.config.output:
        write_atomic(report.config.output, text)
    else:
        click.echo(text, nl=False)
    raise SystemExit(0 if report.passed else 1)


def _table_rows_json(rows: list[dict]) -> list[dict]:
    return [dict(r) for r in rows]


# -- commands -----------------------------------------------------------------


def run_superdense(cfg: RunConfig) -> Report:
    N = cfg.N
    report = Report(cfg)
    failures = 0
    mismatched_lookup = 0
    for bits in BitString.all(2 * N + 1):
        state = sd.encode(N, bits)
        got = sd.decode(state, N, trial_rng(cfg.seed, bits.value))
        failures += got != bits
        report.checks.append(Check(f"roundtrip.{bits}", float(got.value), float(bits.value), got == bits, "=="))
        mismatched_lookup += sd.decode_lookup(state, N) != bits
    total = 1 << (2 * N + 1)
    report.checks.append(Check("roundtrips_passed", float(total - failures), float(total), failures == 0, "=="))
    report.checks.append(Check("lookup_decoder_agrees", float(total - mismatched_lookup), float(total), mismatched_lookup == 0, "=="))
    cap = sd.capacity_check(N)
    report.checks.append(Check("num_states", float(cap.num_states), float(total), cap.num_states == total, "=="))
    report.checks.append(Check("max_gram_deviation", cap.gram_deviation, ATOL, cap.all_orthonormal, "<"))
    report.checks.append(Check("alice_qubits", float(cap.alice_qubit_count), float(N + 1), cap.alice_qubit_count == N + 1, "=="))
    report.checks.append(Check("encoding_local_to_alice", float(cap.local_to_alice), 1.0, cap.local_to_alice, "=="))
    report.details["bits_per_qubit"] = str(cap.ratio)
    if N <= 3:
        report.tables["encoding"] = [
            {
                "bits": r["bits"],
                "operator": r["operator"],
                "state": sd.format_ket_sum(r["state"]),
                "factors": " ".join(r["factors"]),
            }
            for r in sd.table_rows(N)
        ]
    return report


def _summarize_branches(report: Report, all_branches: list[list], expected_count: int, uniform: float | None):
    min_f = min(b.fidelity for branches in all_branches for b in branches)
    counts = {len(branches) for branches in all_branches}
    report.checks.append(Check("min_fidelity", min_f, 1 - ATOL, min_f >= 1 - ATOL, ">="))
    ok = counts == {expected_count}
    report.checks.append(Check("branches_per_input", float(min(counts)), float(expected_count), ok, "=="))
    if uniform is not None:
        dev = max(abs(b.probability - uniform) for branches in all_branches for b in branches)
        report.checks.append(Check("outcome_probability_deviation", dev, ATOL, dev < ATOL, "<"))


def run_teleport(cfg: RunConfig) -> Report:
    report = Report(cfg)
    five = cfg.protocol == "fivequbit"
    N = 1 if five else cfg.N
    if cfg.enumerate:
        all_branches = []
        for t in range(cfg.trials):
            psi = haar_random_state(N, trial_rng(cfg.seed, t))
            all_branches.append(tp.fivequbit_branches(psi) if five else tp.teleport_n_branches(psi, N))
        count = 4 if five else 4**N
        _summarize_branches(report, all_branches, count, 1 / count)
    else:
        runs = []
        for t in range(cfg.trials):
            rng = trial_rng(cfg.seed, t)
            psi = haar_random_state(N, rng)
            run = tp.teleport_1_fivequbit(psi, rng) if five else tp.teleport_n(psi, N, rng)
            runs.append(run)
        min_f = min(r.fidelity for r in runs)
        report.checks.append(Check("min_fidelity", min_f, 1 - ATOL, min_f >= 1 - ATOL, ">="))
        report.details["transcripts"] = [_transcript_json(r, cfg.seed, t) for t, r in enumerate(runs)]
    cbits = 2 if five else 2 * N
    _, steps = tp.fivequbit_steps() if five else tp.teleport_steps(N)
    report.checks.append(Check("classical_bits", float(steps[0].cbits), float(cbits), steps[0].cbits == cbits, "=="))
    if five:
        report.tables["five-particle measurement"] = _table_rows_json(tables.table_fivequbit())
    elif N <= 2:
        report.tables[f"omega basis (N={N})"] = _table_rows_json(tables.table_teleport(N))
    return report


def _transcript_json(run, seed: int, trial: int) -> dict:
    d = run.to_dict()
    d["seed"] = seed
    d["trial"] = trial
    d["final_state"] = kets_json(run.final_state)
    return d


def run_qis(cfg: RunConfig) -> Report:
    report = Report(cfg)
    proto = cfg.protocol
    single = proto in qis_mod.SINGLE_PROTOCOLS
    N = 1 if single else (2 if proto == "two" else cfg.N)

    def branches_for(psi):
        return qis_mod.qis_single_branches(proto, psi) if single else qis_mod.qis_n_branches(psi, N)

    if cfg.enumerate:
        inputs = [haar_random_state(N, trial_rng(cfg.seed, t)) for t in range(cfg.trials)]
        all_branches = [branches_for(psi) for psi in inputs]
        expected = 16 if single else 2 * 4**N
        _summarize_branches(report, all_branches, expected, 1 / expected)
        # each shipped correction must be the one exhaustive search finds
        disagreements = 0
        for psi, branches in zip(inputs, all_branches):
            for b in branches:
                found = search_correction(psi, list(range(1, N + 1)), b.pre_correction)
                disagreements += found != b.correction
        n = sum(len(b) for b in all_branches)
        report.checks.append(Check("correction_matches_search", float(n - disagreements), float(n), disagreements == 0, "=="))
    else:
        runs = []
        for t in range(cfg.trials):
            rng = trial_rng(cfg.seed, t)
            psi = haar_random_state(N, rng)
            runs.append(qis_mod.qis_single(proto, psi, rng) if single else qis_mod.qis_n(psi, N, rng))
        min_f = min(r.fidelity for r in runs)
        report.checks.append(Check("min_fidelity", min_f, 1 - ATOL, min_f >= 1 - ATOL, ">="))
        report.details["transcripts"] = [_transcript_json(r, cfg.seed, t) for t, r in enumerate(runs)]

    secrecy_id = proto if single or proto == "two" else "n"
    secrecy = qis_mod.secrecy_check(secrecy_id, N, 10, trial_rng(cfg.seed, 1 << 32))
    report.add(secrecy, "secrecy.")

    if single:
        report.tables["charlie corrections (alice, bob)"] = [
            {"alice": a, "bob": b, "correction": c} for (a, b), c in sorted(qis_mod.SINGLE_CORRECTIONS[proto].items())
        ]
        report.tables["alice outcome -> bob and charlie"] = _table_rows_json(tables.table_qis_single_alice(proto))
        report.tables["bob outcome -> charlie (alice outcome 0)"] = _table_rows_json(tables.table_qis_single_bob(proto))
    else:
        report.tables["charlie corrections (alice, bob)"] = [
            {"alice": j, "bob": b, "correction": qis_mod.qis_correction(N, j, b).label()}
            for j in range(4**N) for b in (0, 1)
        ]
        if N <= 2:
            report.tables["alice outcome -> bob and charlie"] = _table_rows_json(tables.table_qis_alice(N))
    return report


def _corrupted(basis: MeasurementBasis) -> MeasurementBasis:
    first = StateVector(basis.subset_size, basis[0].amplitudes * 1.01)
    return MeasurementBasis(basis.label + "-corrupted", basis.subset_size, (first,) + basis.elements[1:])


def run_verify(cfg: RunConfig, corrupt: bool = False) -> Report:
    report = Report(cfg)
    for n in range(1, cfg.N + 1):
        sd_basis = superdense_basis(n)
        if corrupt and n == cfg.N:
            sd_basis = _corrupted(sd_basis)
        report.add(check_orthonormal(sd_basis), f"N={n}.superdense.")
        rank = basis_rank(sd_basis)
        report.checks.append(Check(f"N={n}.superdense.rank", float(rank), float(2 ** (2 * n + 1)), rank == 2 ** (2 * n + 1), "=="))
        omega = omega_basis_teleport(n)
        report.add(check_orthonormal(omega), f"N={n}.omega_teleport.")
        rank = basis_rank(omega)
        report.checks.append(Check(f"N={n}.omega_teleport.rank", float(rank), float(4**n), rank == 4**n, "=="))
        report.add(check_orthonormal(omega_basis_qis(n)), f"N={n}.omega_qis.")

        channel, parties = channel_teleport(n)
        split = (parties.positions(Party.ALICE), parties.positions(Party.BOB))
        report.add(entanglement_report(channel, split, expected_entropy=float(n)), f"N={n}.channel_alice_bob.")
        qch, qparties = channel_qis(n)
        c = qparties.positions(Party.CHARLIE)
        rest = tuple(p for p in range(1, 2 * n + 2) if p not in c)
        report.add(entanglement_report(qch, (rest, c), expected_entropy=float(n)), f"N={n}.qis_charlie.")

        # completeness: input (x) channel = sum_j Omega_j (x) eta_j
        psi = haar_random_state(n, trial_rng(cfg.seed, n))
        combined = tensor(psi, channel)
        alice = tuple(range(1, n + 1)) + tuple(n + p for p in parties.positions(Party.ALICE))
        dec = decompose(combined, alice, omega)
        err = float(np.max(np.abs(reconstruct(dec, omega).amplitudes - combined.amplitudes)))
        report.checks.append(Check(f"N={n}.teleport_completeness", err, ATOL, err < ATOL, "<"))
        report.checks.append(Check(f"N={n}.teleport_outside_weight", abs(dec.outside_weight), ATOL, abs(dec.outside_weight) < ATOL, "<"))
        report.details[f"N={n}.omega_placement"] = list(omega_teleport_placement(n).placement)

    for name, basis in fixed_bases().items():
        report.add(check_orthonormal(basis), f"fixed.{name}.")
    zeta, _ = channel_teleport(2)
    report.add(entanglement_report(zeta, ((1, 2, 4), (3, 5)), expected_entropy=2.0), "zeta.split_124_35.")
    report.add(entanglement_report(zeta, ((1, 2, 3, 4), (5,)), expected_entropy=1.0), "zeta.split_1234_5.")
    return report


# -- click wiring ---------------------------------------------------------------

_seed = click.option(
    "--seed", type=click.IntRange(0, 2**64 - 1), envvar=SEED_ENV, default=0, show_default=True,
    help=f"Master seed (default from ${SEED_ENV}).",
)
_format = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json", show_default=True)
_output = click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None, help="Write the report here instead of stdout.")
_trials = click.option("--trials", type=click.IntRange(min=1), default=1, show_default=True)
_enum = click.option("--enumerate", "enum", is_flag=True, help="Check every measurement branch instead of sampling one.")


def _n_option(command: str):
    return click.option("--n", "N", type=click.IntRange(1, MAX_N[command]), default=1, show_default=True)


@click.group()
def main():
    """Superdense coding, teleportation and information splitting over GHZ-Bell channels."""


@main.command()
@_n_option("superdense")
@_seed
@_format
@_output
def superdense(N, seed, fmt, output):
    """Exhaustive encode/decode roundtrip for 2N+1 bits."""
    emit(run_superdense(RunConfig("superdense", N=N, seed=seed, format=fmt, output=output)))


@main.command()
@_n_option("teleport")
@click.option("--protocol", type=click.Choice(["n", "fivequbit"]), default="n", show_default=True)
@_trials
@_seed
@_enum
@_format
@_output
def teleport(N, protocol, trials, seed, enum, fmt, output):
    """Teleport Haar-random N-qubit states (or one qubit with the five-particle basis)."""
    cfg = RunConfig("teleport", N=1 if protocol == "fivequbit" else N, protocol=protocol,
                    trials=trials, seed=seed, enumerate=enum, format=fmt, output=output)
    emit(run_teleport(cfg))


@main.command()
@click.option("--protocol", type=click.Choice(["i", "ii", "iii", "two", "n"]), required=True)
@_n_option("qis")
@_trials
@_seed
@_enum
@_format
@_output
def qis(protocol, N, trials, seed, enum, fmt, output):
    """Split a Haar-random state between Bob and Charlie."""
    if protocol in qis_mod.SINGLE_PROTOCOLS:
        N = 1
    elif protocol == "two":
        N = 2
    cfg = RunConfig("qis", N=N, protocol=protocol, trials=trials, seed=seed, enumerate=enum, format=fmt, output=output)
    emit(run_qis(cfg))


@main.command()
@_n_option("verify")
@_seed
@_format
@_output
@click.option("--corrupt-basis", is_flag=True, hidden=True, help="Negative control: scale one basis element by 1.01.")
def verify(N, seed, fmt, output, corrupt_basis):
    """Orthonormality, entanglement and completeness checks for every basis up to N."""
    emit(run_verify(RunConfig("verify", N=N, seed=seed, format=fmt, output=output), corrupt=corrupt_basis))


if __name__ == "__main__":
    main()
