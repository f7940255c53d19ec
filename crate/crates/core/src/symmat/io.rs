//! Plain-text matrix format: a line holding `dim`, then `dim` lines of `dim`
//! whitespace-separated decimal numbers. Blank lines and `#` comments are
//! ignored on input; output uses 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use super::{Matrix, SpdMatrix, SymMatrix};
use crate::{Error, NumericConfig, Result};

pub fn parse_matrix(text: &str, cfg: &NumericConfig) -> Result<SymMatrix> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());

    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input, expected dimension line".into()))?;
    let dim: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("invalid dimension line `{header}`")))?;
    if dim == 0 {
        return Err(Error::Parse("dimension must be >= 1".into()));
    }

    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {dim} rows, found {row}")))?;
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: invalid number `{tok}`", row + 1)))?;
            data.push(v);
        }
        let found = data.len() - before;
        if found != dim {
            return Err(Error::Parse(format!(
                "row {} has {found} entries, expected {dim}",
                row + 1
            )));
        }
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
    }
    SymMatrix::new(Matrix::from_vec(dim, dim, data)?, cfg)
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn read_matrix_file(path: impl AsRef<Path>, cfg: &NumericConfig) -> Result<SymMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix(&text, cfg).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_spd_file(path: impl AsRef<Path>, cfg: &NumericConfig) -> Result<SpdMatrix> {
    let path = path.as_ref();
    let sym = read_matrix_file(path, cfg)?;
    SpdMatrix::new(sym, cfg).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_matrix_file(path: impl AsRef<Path>, m: &Matrix) -> std::io::Result<()> {
    std::fs::write(path, format_matrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# example\n2\n2 1\n1 1 # trailing\n";
        let m = parse_matrix(text, &NumericConfig::default()).unwrap();
        assert_eq!(
            m.as_matrix().to_rows(),
            vec![vec![2.0, 1.0], vec![1.0, 1.0]]
        );
    }

    #[test]
    fn rejects_malformed() {
        let cfg = NumericConfig::default();
        assert!(parse_matrix("", &cfg).is_err());
        assert!(parse_matrix("2\n1 0\n", &cfg).is_err());
        assert!(parse_matrix("2\n1 0 0\n0 1\n", &cfg).is_err());
        assert!(parse_matrix("2\n1 x\n0 1\n", &cfg).is_err());
        assert!(parse_matrix("2\n1 0\n0 1\n5\n", &cfg).is_err());
        assert!(matches!(
            parse_matrix("2\n1 0.5\n0 1\n", &cfg),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn text_round_trip_is_exact() {
        let m = Matrix::from_rows(&[[1.0 / 3.0, 0.1], [0.1, std::f64::consts::PI]]).unwrap();
        let back = parse_matrix(&format_matrix(&m), &NumericConfig::default()).unwrap();
        assert_eq!(back.as_matrix(), &m);
    }
}
