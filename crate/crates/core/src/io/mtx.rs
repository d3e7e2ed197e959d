use std::path::Path;

use crate::error::{Error, Result};
use crate::matcore::DenseMatrix;

#[derive(Clone, Copy, PartialEq)]
enum Symmetry {
    General,
    Symmetric,
    Skew,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    parse_matrix_market(&std::fs::read_to_string(path)?)
}

/// Parses real or integer `array` and `coordinate` files with `general`,
/// `symmetric` or `skew-symmetric` structure. Coordinate indices are
/// 1-based and duplicate entries are summed.
pub fn parse_matrix_market(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(hline, "expected header \"%%MatrixMarket matrix <format> <field> <symmetry>\""));
    }
    let coordinate = match tokens[2].as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(parse_err(hline, format!("unknown format \"{other}\""))),
    };
    match tokens[3].as_str() {
        "real" | "integer" => {}
        "pattern" | "complex" => {
            return Err(parse_err(hline, format!("unsupported field \"{}\"; only real and integer", tokens[3])))
        }
        other => return Err(parse_err(hline, format!("unknown field \"{other}\""))),
    }
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::Skew,
        other => return Err(parse_err(hline, format!("unsupported symmetry \"{other}\""))),
    };

    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (sline, size) = body.next().ok_or_else(|| parse_err(hline, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(sline, format!("bad size value \"{t}\""))))
        .collect::<Result<_>>()?;
    let expected = if coordinate { 3 } else { 2 };
    if dims.len() != expected {
        return Err(parse_err(sline, format!("size line needs {expected} integers")));
    }
    let (m, n) = (dims[0], dims[1]);
    if symmetry != Symmetry::General && m != n {
        return Err(parse_err(sline, "symmetric storage needs a square matrix"));
    }
    let mut out = DenseMatrix::zeros(m, n);
    let value = |line: usize, t: &str| -> Result<f64> {
        let v: f64 = t.parse().map_err(|_| parse_err(line, format!("bad value \"{t}\"")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(parse_err(line, "non-finite value"))
        }
    };

    if coordinate {
        let nnz = dims[2];
        let mut seen = 0;
        for (line, l) in body {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 3 {
                return Err(parse_err(line, "coordinate entry needs \"row col value\""));
            }
            if seen == nnz {
                return Err(parse_err(line, format!("more than {nnz} entries")));
            }
            let idx = |s: &str, bound: usize| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(i) if (1..=bound).contains(&i) => Ok(i - 1),
                    _ => Err(parse_err(line, format!("index \"{s}\" out of range 1..={bound}"))),
                }
            };
            let (i, j, v) = (idx(t[0], m)?, idx(t[1], n)?, value(line, t[2])?);
            match symmetry {
                Symmetry::General => out[(i, j)] += v,
                Symmetry::Symmetric => {
                    out[(i, j)] += v;
                    if i != j {
                        out[(j, i)] += v;
                    }
                }
                Symmetry::Skew => {
                    if i == j {
                        return Err(parse_err(line, "skew-symmetric file has a diagonal entry"));
                    }
                    out[(i, j)] += v;
                    out[(j, i)] -= v;
                }
            }
            seen += 1;
        }
        if seen < nnz {
            return Err(parse_err(text.lines().count(), format!("expected {nnz} entries, found {seen}")));
        }
    } else {
        // Column-major; symmetric files list the lower triangle only.
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| {
                let first = match symmetry {
                    Symmetry::General => 0,
                    Symmetry::Symmetric => j,
                    Symmetry::Skew => j + 1,
                };
                (first..m).map(move |i| (i, j))
            })
            .collect();
        let mut k = 0;
        for (line, l) in body {
            for t in l.split_whitespace() {
                let Some(&(i, j)) = slots.get(k) else {
                    return Err(parse_err(line, format!("more than {} values", slots.len())));
                };
                let v = value(line, t)?;
                out[(i, j)] = v;
                match symmetry {
                    Symmetry::General => {}
                    Symmetry::Symmetric => out[(j, i)] = v,
                    Symmetry::Skew => out[(j, i)] = -v,
                }
                k += 1;
            }
        }
        if k < slots.len() {
            return Err(parse_err(text.lines().count(), format!("expected {} values, found {k}", slots.len())));
        }
    }
    Ok(out)
}

/// Dense `array real general` text that parses back to the same bits.
pub fn write_matrix_market(a: &DenseMatrix) -> String {
    let mut s = String::from("%%MatrixMarket matrix array real general\n");
    s.push_str(&format!("{} {}\n", a.rows(), a.cols()));
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            s.push_str(&super::fmt_float(a[(i, j)]));
            s.push('\n');
        }
    }
    s
}
