//! Matrix Market coordinate format import/export (ASCII, 1-based,
//! `real general`). Values are written in shortest round-trip form so
//! export followed by import is bit-exact.

use super::{LaError, SparseMatrix};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

pub fn write_matrix_market<W: Write>(w: &mut W, a: &SparseMatrix) -> Result<(), LaError> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.nrows(), a.ncols(), a.nnz())?;
    for i in 0..a.nrows() {
        let (cols, vals) = a.row(i);
        for (c, v) in cols.iter().zip(vals) {
            writeln!(w, "{} {} {}", i + 1, c + 1, v)?;
        }
    }
    Ok(())
}

pub fn write_matrix_market_file<P: AsRef<Path>>(path: P, a: &SparseMatrix) -> Result<(), LaError> {
    let mut f = std::fs::File::create(path)?;
    write_matrix_market(&mut f, a)
}

pub fn read_matrix_market<R: BufRead>(r: R) -> Result<SparseMatrix, LaError> {
    let mut lines = r.lines().enumerate();
    let (line_no, header) = lines
        .next()
        .ok_or(LaError::Parse {
            line: 1,
            msg: "empty input".into(),
        })
        .and_then(|(n, l)| Ok((n + 1, l?)))?;
    let h = header.to_ascii_lowercase();
    if !h.starts_with("%%matrixmarket") || !h.contains("coordinate") || !h.contains("real") {
        return Err(LaError::Parse {
            line: line_no,
            msg: format!("unsupported header: {header}"),
        });
    }
    if h.contains("symmetric") || h.contains("skew") || h.contains("hermitian") {
        return Err(LaError::Parse {
            line: line_no,
            msg: "only `general` symmetry is supported".into(),
        });
    }

    let mut dims: Option<(usize, usize, usize)> = None;
    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        match dims {
            None => {
                if fields.len() != 3 {
                    return Err(LaError::Parse {
                        line: line_no,
                        msg: "size line must have 3 fields".into(),
                    });
                }
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|e| LaError::Parse {
                        line: line_no,
                        msg: format!("bad integer `{s}`: {e}"),
                    })
                };
                dims = Some((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
                triplets.reserve(dims.unwrap().2);
            }
            Some((nrows, ncols, _)) => {
                if fields.len() != 3 {
                    return Err(LaError::Parse {
                        line: line_no,
                        msg: "entry line must have 3 fields".into(),
                    });
                }
                let i: usize = fields[0].parse().map_err(|e| LaError::Parse {
                    line: line_no,
                    msg: format!("bad row index: {e}"),
                })?;
                let j: usize = fields[1].parse().map_err(|e| LaError::Parse {
                    line: line_no,
                    msg: format!("bad col index: {e}"),
                })?;
                let v: f64 = fields[2].parse().map_err(|e| LaError::Parse {
                    line: line_no,
                    msg: format!("bad value: {e}"),
                })?;
                if i == 0 || j == 0 || i > nrows || j > ncols {
                    return Err(LaError::Parse {
                        line: line_no,
                        msg: format!("1-based index ({i},{j}) out of range"),
                    });
                }
                triplets.push((i - 1, j - 1, v));
            }
        }
    }
    let (nrows, ncols, nnz) = dims.ok_or(LaError::Parse {
        line: 0,
        msg: "missing size line".into(),
    })?;
    if triplets.len() != nnz {
        return Err(LaError::Parse {
            line: 0,
            msg: format!("expected {} entries, found {}", nnz, triplets.len()),
        });
    }
    SparseMatrix::from_triplets(nrows, ncols, &triplets)
}

pub fn read_matrix_market_file<P: AsRef<Path>>(path: P) -> Result<SparseMatrix, LaError> {
    let f = std::fs::File::open(path)?;
    read_matrix_market(BufReader::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn round_trip_is_bit_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut trips = Vec::new();
        for _ in 0..25 {
            trips.push((
                rng.gen_range(0..7),
                rng.gen_range(0..5),
                rng.gen_range(-1.0..1.0),
            ));
        }
        let a = SparseMatrix::from_triplets(7, 5, &trips).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&mut buf, &a).unwrap();
        let b = read_matrix_market(buf.as_slice()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 oops 3.0\n";
        match read_matrix_market(bad.as_bytes()) {
            Err(LaError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_symmetric_storage() {
        let bad = "%%MatrixMarket matrix coordinate real symmetric\n1 1 0\n";
        assert!(matches!(
            read_matrix_market(bad.as_bytes()),
            Err(LaError::Parse { line: 1, .. })
        ));
    }
}
