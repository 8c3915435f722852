//! Deterministic number and table formatting.

use std::fmt::Write as _;

/// Shortest rendering of `v` with at most 10 significant digits, fixed
/// notation for exponents in `[-5, 10)` and scientific otherwise (like C's
/// `%.10g`).
pub fn sig10(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn escape(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// A CSV table of numbers under a one-line header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.header.iter().map(|h| escape(h)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| sig10(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Series label `<model>__f=<value>`.
pub fn series_label(model: &str, f: f64) -> String {
    format!("{model}__f={}", sig10(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(16.0), "16");
        assert_eq!(sig10(0.5), "0.5");
        assert_eq!(sig10(1.0 / 3.0), "0.3333333333");
        assert_eq!(sig10(2.0 / 3.0 * 100.0), "66.66666667");
        assert_eq!(sig10(0.999), "0.999");
        assert_eq!(sig10(-1.25), "-1.25");
        assert_eq!(sig10(143_360.0), "143360");
        assert_eq!(sig10(1.234_567_890_49e12), "1.23456789e12");
        assert_eq!(sig10(9.999_999_999_9), "10");
        assert_eq!(sig10(1e-7), "1e-7");
        assert_eq!(sig10(0.000_012_5), "0.0000125");
        assert_eq!(sig10(f64::INFINITY), "inf");
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(vec!["r".into(), "a,b".into()]);
        t.push(vec![1.0, 0.25]);
        assert_eq!(t.to_csv(), "r,\"a,b\"\n1,0.25\n");
        assert_eq!(series_label("ours", 0.95), "ours__f=0.95");
    }
}
