//! Matrix Market files, JSON report documents and CSV spectrum dumps.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::spectra::{FormulaVariant, Instance, SetId, Spectrum};
use crate::verify::{AdjudicationResult, PairReport, Verdict, VerificationReport};

pub const MATRIX_MARKET_HEADER: &str = "%%MatrixMarket matrix coordinate real general";
pub const SCHEMA_VERSION: &str = "1";
pub const CSV_HEADER: &str = "j,lambda,rel_residual";

/// Shortest decimal that parses back to the same `f64`; exponent form for
/// very large or very small magnitudes.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Writes `M` in coordinate real general form, structural nonzeros only,
/// sorted by (row, col) and 1-based.
pub fn write_matrix_market<W: Write>(m: &DenseMatrix, provenance: &str, mut dest: W) -> Result<()> {
    let n = m.n();
    let mut out = String::new();
    writeln!(out, "{MATRIX_MARKET_HEADER}").unwrap();
    writeln!(out, "% {}", provenance.replace('\n', " ")).unwrap();
    writeln!(out, "{n} {n} {}", m.nnz()).unwrap();
    for (i, row) in m.row_nonzeros().iter().enumerate() {
        for &(j, v) in row {
            writeln!(out, "{} {} {}", i + 1, j + 1, format_f64(v)).unwrap();
        }
    }
    dest.write_all(out.as_bytes())?;
    dest.flush()?;
    Ok(())
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<i64> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: "missing field".into() })?;
    tok.parse::<i64>().map_err(|e| Error::Parse { line, msg: format!("bad integer '{tok}': {e}") })
}

/// Reads a square coordinate real general file into a dense matrix.
///
/// Duplicate coordinates and a mismatched entry count are parse errors.
pub fn read_matrix_market<R: BufRead>(src: R) -> Result<DenseMatrix> {
    let mut lines = src.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => l?,
        None => return Err(Error::MalformedHeader("empty input".into())),
    };
    if header.trim_end() != MATRIX_MARKET_HEADER {
        return Err(Error::MalformedHeader(format!("expected '{MATRIX_MARKET_HEADER}', got '{}'", header.trim_end())));
    }
    let mut size: Option<(usize, usize)> = None;
    let mut data = Vec::new();
    let mut seen = Vec::new();
    let mut count = 0usize;
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let mut toks = t.split_whitespace();
        let Some((n, nnz)) = size else {
            let rows = parse_index(toks.next(), lineno)?;
            let cols = parse_index(toks.next(), lineno)?;
            let nnz = parse_index(toks.next(), lineno)?;
            if rows != cols || rows < 0 || nnz < 0 || toks.next().is_some() {
                return Err(Error::MalformedHeader(format!("size line '{t}' must be 'n n nnz' for a square matrix")));
            }
            let n = rows as usize;
            size = Some((n, nnz as usize));
            data = vec![0.0; n * n];
            seen = vec![false; n * n];
            continue;
        };
        let row = parse_index(toks.next(), lineno)?;
        let col = parse_index(toks.next(), lineno)?;
        let vtok = toks.next().ok_or_else(|| Error::Parse { line: lineno, msg: "missing value".into() })?;
        if toks.next().is_some() {
            return Err(Error::Parse { line: lineno, msg: "trailing fields".into() });
        }
        if row < 1 || col < 1 || row as usize > n || col as usize > n {
            return Err(Error::IndexOutOfRange { row, col, n });
        }
        let v: f64 =
            vtok.parse().map_err(|e| Error::Parse { line: lineno, msg: format!("bad value '{vtok}': {e}") })?;
        if !v.is_finite() {
            return Err(Error::NonFinite("Matrix Market entry"));
        }
        let k = (row as usize - 1) * n + (col as usize - 1);
        if seen[k] {
            return Err(Error::Parse { line: lineno, msg: format!("duplicate entry ({row}, {col})") });
        }
        seen[k] = true;
        data[k] = v;
        count += 1;
        if count > nnz {
            return Err(Error::Parse { line: lineno, msg: format!("more than the declared {nnz} entries") });
        }
    }
    let (n, nnz) = size.ok_or_else(|| Error::MalformedHeader("missing size line".into()))?;
    if count != nnz {
        return Err(Error::Parse { line: 0, msg: format!("declared {nnz} entries, found {count}") });
    }
    DenseMatrix::new(n, data)
}

/// Serde helpers that keep non-finite floats representable in JSON
/// (as the strings `"inf"`, `"-inf"`, `"nan"`).
pub mod lenient_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("invalid float '{other}'"))),
            },
        }
    }
}

/// Current UTC time, ISO-8601 to the second.
pub fn utc_timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// JSON verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub set: SetId,
    pub n: usize,
    pub m: usize,
    pub alpha: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_hat: Option<Vec<f64>>,
    pub variant: FormulaVariant,
    pub h: f64,
    pub eigenvalues: Vec<f64>,
    #[serde(with = "lenient_f64")]
    pub max_rel_residual: f64,
    pub eigvec_rank: usize,
    pub pass: bool,
    pub tolerance_used: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    /// Per-pair rows for the CSV dump; not part of the JSON document.
    #[serde(skip)]
    pub per_pair: Vec<PairReport>,
}

impl ReportDocument {
    pub fn new(inst: &Instance, s: &Spectrum, r: &VerificationReport, timestamp: Option<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            set: inst.set,
            n: s.n,
            m: s.m,
            alpha: inst.alpha.clone(),
            beta: inst.beta.clone(),
            alpha_hat: inst.alpha_hat.clone(),
            variant: s.variant,
            h: s.h,
            eigenvalues: s.eigenvalues.clone(),
            max_rel_residual: r.max_rel_residual,
            eigvec_rank: r.eigvec_rank,
            pass: r.pass,
            tolerance_used: r.tolerance_used,
            warnings: r.warnings.clone(),
            timestamp,
            per_pair: r.per_pair.clone(),
        }
    }
}

/// JSON adjudication report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjudicationDocument {
    pub schema_version: String,
    pub set: SetId,
    #[serde(with = "lenient_f64")]
    pub published_max_residual: f64,
    #[serde(with = "lenient_f64")]
    pub rederived_max_residual: f64,
    pub winner: Verdict,
    pub cases: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl AdjudicationDocument {
    pub fn new(r: &AdjudicationResult, timestamp: Option<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            set: r.set_id,
            published_max_residual: r.published_max_residual,
            rederived_max_residual: r.rederived_max_residual,
            winner: r.winner,
            cases: r.cases,
            seed: r.seed,
            timestamp,
        }
    }
}

/// JSON spectrum dump (closed-form output without certification).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema_version: String,
    pub set: SetId,
    pub n: usize,
    pub m: usize,
    pub variant: FormulaVariant,
    pub h: f64,
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[j]` is `x_{j+1}`.
    pub eigenvectors: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_amplitudes: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl SpectrumDocument {
    pub fn new(s: &Spectrum, timestamp: Option<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            set: s.set_id,
            n: s.n,
            m: s.m,
            variant: s.variant,
            h: s.h,
            eigenvalues: s.eigenvalues.clone(),
            eigenvectors: (0..s.n).map(|j| s.eigenvector(j)).collect(),
            parity_amplitudes: s.parity_amplitudes,
            warnings: s.warnings.clone(),
            timestamp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Anything `write_report` can emit.
#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Verification(&'a ReportDocument),
    Adjudication(&'a AdjudicationDocument),
    Spectrum(&'a SpectrumDocument),
}

fn write_json<T: Serialize, W: Write>(doc: &T, mut dest: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut dest, doc)?;
    dest.write_all(b"\n")?;
    dest.flush()?;
    Ok(())
}

/// JSON document, or CSV rows (`j,lambda,rel_residual` for verification).
pub fn write_report<W: Write>(r: Report<'_>, format: ReportFormat, mut dest: W) -> Result<()> {
    if format == ReportFormat::Json {
        return match r {
            Report::Verification(d) => write_json(d, dest),
            Report::Adjudication(d) => write_json(d, dest),
            Report::Spectrum(d) => write_json(d, dest),
        };
    }
    let mut out = String::new();
    match r {
        Report::Verification(d) => {
            writeln!(out, "{CSV_HEADER}").unwrap();
            for p in &d.per_pair {
                writeln!(out, "{},{},{}", p.j, format_f64(p.lambda), format_f64(p.rel_residual)).unwrap();
            }
        }
        Report::Adjudication(d) => {
            writeln!(out, "set,published_max_residual,rederived_max_residual,winner,cases,seed").unwrap();
            let winner = serde_json::to_value(d.winner)?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                d.set,
                format_f64(d.published_max_residual),
                format_f64(d.rederived_max_residual),
                winner.as_str().unwrap_or_default(),
                d.cases,
                d.seed
            )
            .unwrap();
        }
        Report::Spectrum(d) => {
            let cols: Vec<String> = (1..=d.n).map(|k| format!("x{k}")).collect();
            writeln!(out, "j,lambda,{}", cols.join(",")).unwrap();
            for (j, (l, x)) in d.eigenvalues.iter().zip(&d.eigenvectors).enumerate() {
                let xs: Vec<String> = x.iter().map(|v| format_f64(*v)).collect();
                writeln!(out, "{},{},{}", j + 1, format_f64(*l), xs.join(",")).unwrap();
            }
        }
    }
    dest.write_all(out.as_bytes())?;
    dest.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::build_g2;
    use crate::verify::{adjudicate, relative_residual, DEFAULT_TOL};

    fn mtx(m: &DenseMatrix) -> String {
        let mut buf = Vec::new();
        write_matrix_market(m, "test", &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn identity_text() {
        let text = mtx(&DenseMatrix::identity(2));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], MATRIX_MARKET_HEADER);
        assert!(lines[1].starts_with('%'));
        assert_eq!(&lines[2..], ["2 2 2", "1 1 1", "2 2 1"]);
    }

    #[test]
    fn g2_entries_row_major() {
        let text = mtx(&build_g2([2.0, 1.0, 3.0, 2.0], 2).unwrap());
        let lines: Vec<&str> = text.lines().skip(2).collect();
        assert_eq!(lines, ["2 2 4", "1 1 2", "1 2 1", "2 1 2", "2 2 3"]);
    }

    #[test]
    fn zero_matrix() {
        let text = mtx(&DenseMatrix::zeros(3));
        assert_eq!(text.lines().nth(2), Some("3 3 0"));
        assert_eq!(text.lines().count(), 3);
        assert_eq!(read_matrix_market(text.as_bytes()).unwrap(), DenseMatrix::zeros(3));
    }

    #[test]
    fn round_trip_awkward_values() {
        let vals = [0.1, -1.0 / 3.0, 1e-300, -2.5e300, 123_456_789.123_456_79, 5e-324, 1e16, 0.00001];
        let m = DenseMatrix::from_fn(3, |i, j| vals[(i * 3 + j) % vals.len()]);
        assert_eq!(read_matrix_market(mtx(&m).as_bytes()).unwrap(), m);
    }

    #[test]
    fn read_errors() {
        let bad_header = "%%MatrixMarket matrix coordinate real symmetric\n2 2 0\n";
        assert!(matches!(read_matrix_market(bad_header.as_bytes()), Err(Error::MalformedHeader(_))));
        let zero_index = format!("{MATRIX_MARKET_HEADER}\n2 2 1\n0 1 1.0\n");
        assert!(matches!(read_matrix_market(zero_index.as_bytes()), Err(Error::IndexOutOfRange { row: 0, .. })));
        let big = format!("{MATRIX_MARKET_HEADER}\n2 2 1\n1 3 1.0\n");
        assert!(matches!(read_matrix_market(big.as_bytes()), Err(Error::IndexOutOfRange { col: 3, .. })));
        let nan = format!("{MATRIX_MARKET_HEADER}\n2 2 1\n1 1 NaN\n");
        assert!(matches!(read_matrix_market(nan.as_bytes()), Err(Error::NonFinite(_))));
        let short = format!("{MATRIX_MARKET_HEADER}\n2 2 2\n1 1 1.0\n");
        assert!(matches!(read_matrix_market(short.as_bytes()), Err(Error::Parse { .. })));
        let rect = format!("{MATRIX_MARKET_HEADER}\n2 3 0\n");
        assert!(matches!(read_matrix_market(rect.as_bytes()), Err(Error::MalformedHeader(_))));
        let dup = format!("{MATRIX_MARKET_HEADER}\n2 2 2\n1 1 1.0\n1 1 2.0\n");
        assert!(matches!(read_matrix_market(dup.as_bytes()), Err(Error::Parse { .. })));
    }

    fn set1_doc() -> ReportDocument {
        let inst = Instance::new(SetId::Set1, 2, vec![2.0, -1.0]).with_beta(vec![1.0]).with_m(1);
        let (a, b) = inst.matrices().unwrap();
        let s = inst.spectrum().unwrap();
        let r = relative_residual(&a, b.as_ref(), &s, DEFAULT_TOL).unwrap();
        ReportDocument::new(&inst, &s, &r, None)
    }

    #[test]
    fn verification_json() {
        let doc = set1_doc();
        let mut buf = Vec::new();
        write_report(Report::Verification(&doc), ReportFormat::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["set"], "1");
        assert_eq!(v["pass"], true);
        assert!(v.get("timestamp").is_none());
        let mut eig: Vec<f64> = v["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
        eig.sort_by(f64::total_cmp);
        assert!((eig[0] - 1.381966).abs() < 1e-6 && (eig[1] - 3.618034).abs() < 1e-6);
        let back: ReportDocument = serde_json::from_slice(&buf).unwrap();
        assert_eq!(ReportDocument { per_pair: Vec::new(), ..doc }, back);
    }

    #[test]
    fn verification_csv() {
        let doc = set1_doc();
        let mut buf = Vec::new();
        write_report(Report::Verification(&doc), ReportFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("j,lambda,rel_residual"));
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn adjudication_json() {
        let doc = AdjudicationDocument::new(&adjudicate(SetId::Set4, 20, 42).unwrap(), Some(utc_timestamp()));
        let mut buf = Vec::new();
        write_report(Report::Adjudication(&doc), ReportFormat::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["winner"], "rederived");
        assert!(v["timestamp"].as_str().unwrap().ends_with('Z'));
    }

    #[test]
    fn non_finite_residual_survives_json() {
        let mut doc = set1_doc();
        doc.max_rel_residual = f64::INFINITY;
        let text = serde_json::to_string(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.max_rel_residual, f64::INFINITY);
    }
}
