"""DOT renderings of a classification report."""

from __future__ import annotations

from .classify import ClassificationReport


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def compat_dot(report: ClassificationReport) -> str:
    """Undirected graph on the indecomposables; edges join tau-compatible pairs.

    Modules that are not tau-rigid are drawn dashed and have no edges.
    """
    T = report.table
    if not len(T):
        raise ValueError("no indecomposables within the bound")
    H = T.hom_tau
    lines = [f"graph {_quote('compat_' + (report.name or 'algebra'))} {{",
             "  node [shape=box];"]
    for k, label in enumerate(T.labels):
        style = "" if T.tau_rigid[k] else ", style=dashed"
        lines.append(f"  n{k} [label={_quote(label)}{style}];")
    for i in range(len(T)):
        for j in range(i + 1, len(T)):
            if T.tau_rigid[i] and T.tau_rigid[j] and H[i, j] == 0 and H[j, i] == 0:
                lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def families_dot(report: ClassificationReport) -> str:
    """Inclusion diagram tilting -> tau-tilting -> support tau-tilting, with each
    module attached to the smallest family containing it."""
    if not report.families_computed:
        raise ValueError("families were not computed for this algebra")
    T = report.table
    tilting = set(report.tilting)
    tau_tilting = set(report.tau_tilting)
    lines = [f"digraph {_quote('families_' + (report.name or 'algebra'))} {{",
             "  rankdir=LR;",
             f"  tilting [shape=ellipse, label={_quote(f'tilting ({len(tilting)})')}];",
             f"  tau_tilting [shape=ellipse, label={_quote(f'tau-tilting ({len(tau_tilting)})')}];",
             "  support_tau_tilting [shape=ellipse, label="
             f"{_quote(f'support tau-tilting ({len(report.support_tau_tilting)})')}];",
             "  tilting -> tau_tilting;",
             "  tau_tilting -> support_tau_tilting;"]
    for k, e in enumerate(report.support_tau_tilting):
        label = T.label(e.summands)
        if e.summands in tilting:
            family = "tilting"
        elif e.summands in tau_tilting:
            family = "tau_tilting"
        else:
            family = "support_tau_tilting"
            label += " | supp " + (",".join(str(v) for v in e.support) or "none")
        lines.append(f"  m{k} [shape=box, label={_quote(label)}];")
        lines.append(f"  m{k} -> {family};")
    lines.append("}")
    return "\n".join(lines) + "\n"
