use std::collections::BTreeMap;
use std::fmt::Write;

use cmineq::ExtendedReal;
use serde::Serialize;

pub type Error = Box<dyn std::error::Error>;

pub fn json<T: Serialize>(value: &T) -> Result<String, Error> {
    let mut out = serde_json::to_string_pretty(value)?;
    out.push('\n');
    Ok(out)
}

pub fn csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(
        w.into_inner().map_err(|e| e.to_string())?,
    )?)
}

/// Plain notation for moderate magnitudes, scientific otherwise.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e6).contains(&a) || !a.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

/// Nodes as a single CSV cell.
pub fn joined(nodes: &[f64]) -> String {
    nodes
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Bucket {
    Negative,
    Zero,
    Decade(i32),
    Infinite,
}

impl Bucket {
    fn of(margin: ExtendedReal) -> Self {
        match margin {
            ExtendedReal::NegInfinity => Bucket::Negative,
            ExtendedReal::PosInfinity => Bucket::Infinite,
            ExtendedReal::Finite(v) if v < 0.0 => Bucket::Negative,
            ExtendedReal::Finite(0.0) => Bucket::Zero,
            ExtendedReal::Finite(v) => Bucket::Decade(v.log10().floor() as i32),
        }
    }

    fn label(self) -> String {
        match self {
            Bucket::Negative => "< 0".into(),
            Bucket::Zero => "0".into(),
            Bucket::Decade(d) => format!("[1e{d}, 1e{})", d + 1),
            Bucket::Infinite => "inf".into(),
        }
    }
}

const BAR_WIDTH: usize = 40;

/// Text histogram of margins by decade.
pub fn margin_histogram(margins: impl IntoIterator<Item = ExtendedReal>) -> String {
    let mut counts: BTreeMap<Bucket, usize> = BTreeMap::new();
    for m in margins {
        *counts.entry(Bucket::of(m)).or_default() += 1;
    }
    let peak = counts.values().copied().max().unwrap_or(0);
    let labels: Vec<(String, usize)> = counts.into_iter().map(|(b, c)| (b.label(), c)).collect();
    let width = labels.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (label, count) in labels {
        let bar = (count * BAR_WIDTH).div_ceil(peak.max(1));
        let _ = writeln!(out, "  {label:>width$}  {count:>7}  {}", "#".repeat(bar));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtendedReal::Finite;

    #[test]
    fn buckets_by_decade() {
        let h = margin_histogram([
            Finite(0.5),
            Finite(0.2),
            Finite(3e-5),
            Finite(0.0),
            Finite(-1.0),
        ]);
        let lines: Vec<&str> = h.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].contains("< 0"));
        assert!(lines[1].trim_start().starts_with("0 "));
        assert!(lines[2].contains("[1e-5, 1e-4)"));
        assert!(lines[3].contains("[1e-1, 1e0)") && lines[3].contains(&"#".repeat(BAR_WIDTH)));
    }

    #[test]
    fn csv_has_header_and_rows() {
        #[derive(Serialize)]
        struct Row {
            a: f64,
            b: ExtendedReal,
        }
        let out = csv([Row {
            a: 0.1,
            b: ExtendedReal::PosInfinity,
        }])
        .unwrap();
        assert_eq!(out, "a,b\n0.1,inf\n");
    }

    #[test]
    fn number_notation() {
        assert_eq!(num(-0.25), "-0.25");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(3e-7), "3e-7");
        assert_eq!(num(2.5e8), "2.5e8");
    }

    #[test]
    fn nodes_join() {
        assert_eq!(joined(&[1.0, 0.25, 3e-7]), "1;0.25;0.0000003");
    }
}
