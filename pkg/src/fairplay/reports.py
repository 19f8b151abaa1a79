"""Render Monte Carlo grid results as CSV files and text tables.

All numeric formatting is fixed-width decimal so that identical results
produce identical bytes; files are written via write-then-rename so an
interrupted run leaves no partial output.
"""

from __future__ import annotations

import os
from pathlib import Path

from .montecarlo import COMPARED_METHODS, GridResult

__all__ = [
    "scenario_rmse_csv",
    "scenario_bias_csv",
    "rule_comparison_csv",
    "summary_csv",
    "render_text_report",
    "write_reports",
    "REPORT_FILES",
]

REPORT_FILES = (
    "scenario_rmse.csv",
    "scenario_bias.csv",
    "rule_comparison.csv",
    "summary.csv",
    "report.txt",
)


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _scenario_key(rep) -> tuple[str, str, str, str]:
    spec = rep.spec
    from .montecarlo import form_label

    return (
        spec.field_shape.value,
        str(spec.timing),
        spec.fide_rule.value,
        form_label(spec.form_delta),
    )


def scenario_rmse_csv(grid: GridResult) -> str:
    lines = ["field,n,fide_rule,form,fide,elo,perf,bayes,winner"]
    for rep in grid.scenarios:
        field, n, rule, form = _scenario_key(rep)
        cells = ",".join(_fmt(rep.per_method[m].rmse) for m in COMPARED_METHODS)
        lines.append(f"{field},{n},{rule},{form},{cells},{rep.winner}")
    return "\n".join(lines) + "\n"


def scenario_bias_csv(grid: GridResult) -> str:
    lines = ["field,n,fide_rule,form,fide,elo,perf,bayes"]
    for rep in grid.scenarios:
        field, n, rule, form = _scenario_key(rep)
        cells = ",".join(_fmt(rep.per_method[m].bias) for m in COMPARED_METHODS)
        lines.append(f"{field},{n},{rule},{form},{cells}")
    return "\n".join(lines) + "\n"


def rule_comparison_csv(grid: GridResult) -> str:
    """Both uniform rules scored in every scenario, regardless of timing."""
    lines = ["field,n,form,annul,forfeit,bayes,best"]
    for rep in grid.scenarios:
        field, n, _, form = _scenario_key(rep)
        values = {m: rep.per_method[m].rmse for m in ("annul", "forfeit", "bayes")}
        best = min(values, key=values.get)
        lines.append(
            f"{field},{n},{form},{_fmt(values['annul'])},{_fmt(values['forfeit'])},"
            f"{_fmt(values['bayes'])},{best}"
        )
    return "\n".join(lines) + "\n"


def summary_csv(grid: GridResult) -> str:
    s = grid.summary
    lines = ["panel,label,metric,value"]
    for name, err in s.overall.items():
        lines.append(f"A,{name},rmse,{_fmt(err.rmse)}")
        lines.append(f"A,{name},bias,{_fmt(err.bias)}")
    for rule, (fide, bayes, pct) in s.by_rule.items():
        lines.append(f"B,{rule},fide_rmse,{_fmt(fide)}")
        lines.append(f"B,{rule},bayes_rmse,{_fmt(bayes)}")
        lines.append(f"B,{rule},improvement_pct,{_fmt(pct)}")
    for form, (vs_fide, vs_elo) in s.by_form.items():
        lines.append(f"C,{form},vs_fide_pct,{_fmt(vs_fide)}")
        lines.append(f"C,{form},vs_elo_pct,{_fmt(vs_elo)}")
    return "\n".join(lines) + "\n"


def render_text_report(grid: GridResult) -> str:
    out = []
    header = (
        f"{'field':<7} {'n':>2} {'rule':<8} {'form':<8} "
        f"{'fide':>7} {'elo':>7} {'perf':>7} {'bayes':>7}"
    )

    out.append(
        f"cross-validated imputation study: {grid.tournaments_per_scenario} "
        f"tournaments/scenario, seed {grid.global_seed}"
    )
    out.append("")
    out.append("RMSE by scenario (lower is better)")
    out.append(header + f" {'winner':<7}")
    out.append("-" * 72)
    for rep in grid.scenarios:
        field, n, rule, form = _scenario_key(rep)
        cells = " ".join(f"{rep.per_method[m].rmse:7.3f}" for m in COMPARED_METHODS)
        out.append(f"{field:<7} {n:>2} {rule:<8} {form:<8} {cells} {rep.winner:<7}")
    out.append("")
    out.append("Average bias by scenario (closer to 0 is better)")
    out.append(header)
    out.append("-" * 64)
    for rep in grid.scenarios:
        field, n, rule, form = _scenario_key(rep)
        cells = " ".join(f"{rep.per_method[m].bias:+7.3f}" for m in COMPARED_METHODS)
        out.append(f"{field:<7} {n:>2} {rule:<8} {form:<8} {cells}")
    out.append("")
    out.append("Uniform-rule comparison, RMSE (both rules scored in every scenario)")
    out.append(
        f"{'field':<7} {'n':>2} {'form':<8} {'annul':>7} {'forfeit':>8} {'bayes':>7} {'best':<7}"
    )
    out.append("-" * 56)
    for rep in grid.scenarios:
        field, n, _, form = _scenario_key(rep)
        values = {m: rep.per_method[m].rmse for m in ("annul", "forfeit", "bayes")}
        best = min(values, key=values.get)
        out.append(
            f"{field:<7} {n:>2} {form:<8} {values['annul']:7.3f} "
            f"{values['forfeit']:8.3f} {values['bayes']:7.3f} {best:<7}"
        )
    out.append("")
    s = grid.summary
    out.append("Overall performance (pooled over all held-out games)")
    for name, err in s.overall.items():
        out.append(f"  {name:<6} rmse {err.rmse:6.3f}   bias {err.bias:+6.3f}")
    out.append("Improvement of the shrinkage method over the applied rule, by rule")
    for rule, (fide, bayes, pct) in s.by_rule.items():
        out.append(f"  {rule:<8} rule rmse {fide:6.3f} -> {bayes:6.3f}  ({pct:+.1f}%)")
    out.append("Improvement by withdrawn player's form (vs applied rule / vs pure Elo)")
    for form, (vs_fide, vs_elo) in s.by_form.items():
        out.append(f"  {form:<8} {vs_fide:+6.1f}% / {vs_elo:+6.1f}%")
    return "\n".join(out) + "\n"


def _atomic_write(path: Path, content: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)


def write_reports(grid: GridResult, out_dir: str | Path) -> list[Path]:
    """Write the four CSV tables plus the text report; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    contents = {
        "scenario_rmse.csv": scenario_rmse_csv(grid),
        "scenario_bias.csv": scenario_bias_csv(grid),
        "rule_comparison.csv": rule_comparison_csv(grid),
        "summary.csv": summary_csv(grid),
        "report.txt": render_text_report(grid),
    }
    paths = []
    for name in REPORT_FILES:
        path = out_dir / name
        _atomic_write(path, contents[name])
        paths.append(path)
    return paths
