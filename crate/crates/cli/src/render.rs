//! Plain-text tables for experiment reports.

use crimelab::analysis::{DiscrepancyCurve, MismatchReport, MultiFrequencyResult};
use crimelab::experiment::format::format_short;
use crimelab::experiment::ExperimentResult;
use crimelab::solver::SolutionSet;
use crimelab::{Complex64, SyntheticDatum};

pub fn complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() && format_short(z.im) != "0" {
        '-'
    } else {
        '+'
    };
    format!("{}{sign}{}i", format_short(z.re), format_short(z.im.abs()))
}

fn epsilon(z: Complex64) -> String {
    if format_short(z.im) == "0" {
        format_short(z.re)
    } else {
        complex(z)
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(format_short).unwrap_or_else(|| "-".into())
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn datum(d: &SyntheticDatum) -> String {
    let mut rows = vec![
        vec!["value".to_string(), complex(d.value)],
        vec!["truth".to_string(), format_short(d.truth)],
        vec!["noise".to_string(), format_short(d.noise_magnitude)],
    ];
    if let Some(k) = d.wavenumber {
        rows.push(vec!["k".to_string(), format_short(k)]);
    }
    rows.iter()
        .map(|r| format!("{:<7}{}\n", r[0], r[1]))
        .collect()
}

fn solutions(set: &SolutionSet, lattice: bool) -> String {
    let rows: Vec<Vec<String>> = set
        .candidates
        .iter()
        .map(|c| {
            let mut row = Vec::new();
            if lattice {
                row.push(c.lattice_index.map(|n| n.to_string()).unwrap_or_default());
            }
            row.push(epsilon(c.epsilon));
            row.push(format_short(c.residual));
            row.push(format!("{:?}", c.classification));
            row
        })
        .collect();
    let header: &[&str] = if lattice {
        &["n", "epsilon", "residual", "class"]
    } else {
        &["epsilon", "residual", "class"]
    };
    table(header, &rows)
}

fn multi_frequency(mf: &MultiFrequencyResult) -> String {
    let mut out = String::new();
    for f in &mf.per_frequency {
        let roots: Vec<String> = f
            .solutions
            .in_range_real()
            .into_iter()
            .map(format_short)
            .collect();
        out += &format!("k = {}: {}\n", format_short(f.wavenumber), roots.join(", "));
    }
    let survivors: Vec<String> = mf.intersection.iter().copied().map(format_short).collect();
    out += &format!("intersection: {}\n", survivors.join(", "));
    out
}

fn sweep(rows: &[MismatchReport]) -> String {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format_short(r.phi),
                optional(r.epsilon_recovered),
                optional(r.delta_measured),
                optional(r.delta_predicted),
                r.status.label().to_string(),
            ]
        })
        .collect();
    table(
        &["phi", "epsilon", "delta", "delta_predicted", "status"],
        &rows,
    )
}

fn scan(curve: &DiscrepancyCurve) -> String {
    let rows: Vec<Vec<String>> = curve
        .minima
        .iter()
        .map(|m| vec![format_short(m.epsilon), format_short(m.j)])
        .collect();
    format!("samples {}\nminima {}\n", curve.epsilons.len(), rows.len())
        + &table(&["epsilon", "J"], &rows)
}

pub fn result(result: &ExperimentResult) -> String {
    match result {
        ExperimentResult::Invert {
            datum: d,
            solutions: s,
        } => datum(d) + "\n" + &solutions(s, false),
        ExperimentResult::MirrorInvert {
            datum: d,
            solutions: s,
        } => datum(d) + "\n" + &solutions(s, true),
        ExperimentResult::MultiFrequency(mf) => multi_frequency(mf),
        ExperimentResult::MismatchSweep { rows } => sweep(rows),
        ExperimentResult::DiscrepancyScan { datum: d, curve } => datum(d) + "\n" + &scan(curve),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_signs() {
        assert_eq!(complex(Complex64::new(0.39, 0.0)), "0.39+0i");
        assert_eq!(complex(Complex64::new(-1.0, -0.5)), "-1-0.5i");
        assert_eq!(complex(Complex64::new(1.0, -1e-14)), "1+0i");
    }

    #[test]
    fn columns_align() {
        let t = table(&["a", "bb"], &[vec!["long".into(), "x".into()]]);
        assert_eq!(t, "a     bb\nlong  x\n");
    }
}
