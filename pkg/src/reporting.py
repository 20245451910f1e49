# src/reporting.py

# JSON documents and pandas text tables for every CLI result.

import pandas as pd

from src.config import FORMAT_VERSION
from src.covering import genus, passport


def _fraction(value):
    if value is None:
        return None
    return str(value)


def _passport(H):
    return [[label, ct.to_list()] for label, ct in passport(H)]


def component_to_dict(component):
    return {
        'orbit_key': component.orbit_key,
        'size': component.size,
        'deg_V': component.deg_V,
        'deg_U': component.deg_U,
        'genus': component.genus,
        'chi': component.chi,
        'off_diagonal': component.off_diagonal,
        'passport': _passport(component.covering),
    }


def decomposition_to_dict(decomposition):
    return {
        'format_version': FORMAT_VERSION,
        'k': decomposition.k,
        'complete': decomposition.complete,
        'n_components': decomposition.n_components,
        'chi_total': decomposition.total_chi(),
        'components': [component_to_dict(c) for c in decomposition.components],
    }


def decomposition_table(decomposition):
    rows = [{
        'key': c.orbit_key,
        'size': c.size,
        'deg V': c.deg_V,
        'deg U': c.deg_U,
        'genus': c.genus,
        'chi': c.chi,
        'passport': ' '.join(f'{label}:{ct}' for label, ct in passport(c.covering)),
    } for c in decomposition.components]
    df = pd.DataFrame(rows, columns=['key', 'size', 'deg V', 'deg U', 'genus', 'chi', 'passport'])
    header = f"{decomposition.n_components} component(s), chi total {decomposition.total_chi()}"
    if not decomposition.complete:
        header += " (partial: seed orbits only)"
    return header + '\n' + df.to_string(index=False) + '\n'


def normalization_to_dict(H, norm):
    data = {
        'format_version': FORMAT_VERSION,
        'degree': H.degree,
        'genus': genus(H),
        'mon_order': norm.mon_order,
        'orbifold': [[label, nu] for label, nu in norm.orbifold.indices],
        'orbifold_chi': _fraction(norm.orbifold_chi),
        'chi_N': norm.chi_N,
        'genus_N': norm.genus_N,
        'is_galois': norm.is_galois,
        'explicit': norm.explicit_cover is not None,
    }
    return data


def normalization_table(H, norm):
    df = pd.DataFrame([
        ('degree', H.degree),
        ('genus', genus(H)),
        ('|Mon|', norm.mon_order),
        ('orbifold', ' '.join(f'{label}:{nu}' for label, nu in norm.orbifold.indices) or '-'),
        ('chi(O)', str(norm.orbifold_chi)),
        ('chi(N)', norm.chi_N),
        ('g(N)', norm.genus_N),
        ('Galois', norm.is_galois),
        ('explicit route', 'checked' if norm.explicit_cover is not None else 'skipped'),
    ], columns=['quantity', 'value'])
    return df.to_string(index=False) + '\n'


def tameness_to_dict(verdict):
    data = {
        'format_version': FORMAT_VERSION,
        'tame': verdict.tame,
        'components_checked': verdict.components_checked,
        'witness': None,
    }
    if verdict.witness is not None:
        data['witness'] = component_to_dict(verdict.witness)
    return data


def tameness_text(verdict):
    if verdict.tame:
        return f"tame: every one of {verdict.components_checked} off-diagonal component(s) has genus >= 2\n"
    w = verdict.witness
    return (f"wild: off-diagonal component key={w.orbit_key} of size {w.size} has genus {w.genus} "
            f"({verdict.components_checked} component(s) checked)\n")


def check_to_dict(check):
    return {
        'name': check.name,
        'context': check.context,
        'applicable': check.applicable,
        'skipped': check.skipped,
        'lhs': _fraction(check.lhs),
        'relation': check.relation,
        'rhs': _fraction(check.rhs),
        'holds': check.holds,
        'reason': check.reason,
    }


def report_to_dict(report):
    return {
        'format_version': FORMAT_VERSION,
        'summary': dict(report.summary),
        'all_hold': report.all_hold,
        'checks': [check_to_dict(c) for c in report.checks],
    }


def report_table(report):
    rows = []
    for c in report.checks:
        if c.skipped:
            verdict = 'skipped'
        elif not c.applicable:
            verdict = 'n/a'
        else:
            verdict = 'holds' if c.holds else 'FAILED'
        rows.append({
            'check': c.name,
            'on': c.context,
            'lhs': _fraction(c.lhs) or '',
            'rel': c.relation if c.applicable else '',
            'rhs': _fraction(c.rhs) or '',
            'verdict': verdict,
            'note': c.reason or '',
        })
    df = pd.DataFrame(rows, columns=['check', 'on', 'lhs', 'rel', 'rhs', 'verdict', 'note'])
    status = 'all applicable checks hold' if report.all_hold else f"{len(report.failures())} check(s) FAILED"
    return df.to_string(index=False) + '\n' + status + '\n'


def fuzz_table(summary):
    rows = [{'check': name, **{key: counts[key] for key in ('applicable', 'holds', 'failed', 'skipped', 'inapplicable')}}
            for name, counts in summary['checks'].items()]
    df = pd.DataFrame(rows, columns=['check', 'applicable', 'holds', 'failed', 'skipped', 'inapplicable'])
    lines = [f"{summary['trials']} random trial(s), {len(summary['pinned'])} pinned pair(s)"]
    if not df.empty:
        lines.append(df.to_string(index=False))
    lines.append(f"failures: {len(summary['failures'])}, errors: {len(summary['errors'])}")
    return '\n'.join(lines) + '\n'
