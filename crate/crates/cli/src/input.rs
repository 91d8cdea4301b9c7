use rough_hopf::linalg::LinComb;
use rough_hopf::roughpath::PiecewiseLinearPath;
use rough_hopf::scalar::{parse_rational, Scalar};
use rough_hopf::symbols::{parse_expr, AnyComb, Forest, Kind, MultiIndex, Word, MAX_DIM};
use std::path::Path;

use crate::CliError;

/// Basis types that can be read from the text grammar.
pub trait FromAny: Sized + Ord {
    const KIND: Kind;
    fn from_any(a: AnyComb) -> Option<LinComb<Self>>;
}

impl FromAny for Word {
    const KIND: Kind = Kind::Word;
    fn from_any(a: AnyComb) -> Option<LinComb<Self>> {
        match a {
            AnyComb::Word(x) => Some(x),
            _ => None,
        }
    }
}

impl FromAny for Forest {
    const KIND: Kind = Kind::Forest;
    fn from_any(a: AnyComb) -> Option<LinComb<Self>> {
        match a {
            AnyComb::Forest(x) => Some(x),
            _ => None,
        }
    }
}

impl FromAny for MultiIndex {
    const KIND: Kind = Kind::MultiIndex;
    fn from_any(a: AnyComb) -> Option<LinComb<Self>> {
        match a {
            AnyComb::Poly(x) => Some(x),
            _ => None,
        }
    }
}

pub fn parse_as<B: FromAny>(text: &str, dim: usize) -> Result<LinComb<B>, CliError> {
    let any = parse_expr(text, B::KIND, dim).map_err(|e| CliError::Usage(format!("cannot parse `{}`: {}", text, e)))?;
    B::from_any(any).ok_or_else(|| CliError::Usage(format!("`{}` has the wrong kind", text)))
}

fn largest_label(a: &AnyComb) -> usize {
    match a {
        AnyComb::Word(x) => x.support().flat_map(|w| w.letters().iter().copied()).max().unwrap_or(1) as usize,
        AnyComb::Forest(x) => x.support().flat_map(|z| z.labels()).max().unwrap_or(1) as usize,
        AnyComb::Poly(x) => x.support().map(|m| m.dim()).max().unwrap_or(1),
    }
}

/// The dimension needed by a set of expressions when `--dim` is absent: the largest label
/// used (the tuple length for multi-indices), at least 1.
pub fn infer_dim(texts: &[&str], kind: Kind) -> Result<usize, CliError> {
    let mut dim = 1;
    for text in texts {
        let probe = |d: usize| parse_expr(text, kind, d);
        let parsed = match kind {
            Kind::MultiIndex => {
                let arity = text.split(')').next().unwrap_or("").matches(',').count() + 1;
                probe(arity.clamp(1, MAX_DIM))
            }
            _ => probe(9).or_else(|_| probe(MAX_DIM)),
        }
        .map_err(|e| CliError::Usage(format!("cannot parse `{}`: {}", text, e)))?;
        dim = dim.max(largest_label(&parsed));
    }
    Ok(dim)
}

pub fn parse_time(text: &str) -> Result<Scalar, CliError> {
    parse_rational(text).ok_or_else(|| CliError::Usage(format!("`{}` is not a number", text)))
}

/// Reads a path from CSV with header `t,x1,…,xd`; decimals are read exactly.
pub fn read_path(file: &Path) -> Result<PiecewiseLinearPath, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(file)
        .map_err(|e| CliError::Usage(format!("{}: {}", file.display(), e)))?;
    let headers = reader.headers().map_err(|e| CliError::Usage(format!("{}: {}", file.display(), e)))?.clone();
    if headers.get(0) != Some("t") || headers.len() < 2 {
        return Err(CliError::Usage(format!("{}: header must be `t,x1,...,xd`", file.display())));
    }
    let mut knots = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {}", file.display(), e)))?;
        let mut cells = record.iter().map(|c| {
            parse_rational(c).ok_or_else(|| CliError::Usage(format!("{}: row {}: `{}` is not a number", file.display(), row + 1, c)))
        });
        let t = cells.next().ok_or_else(|| CliError::Usage(format!("{}: row {} is empty", file.display(), row + 1)))??;
        let x = cells.collect::<Result<Vec<_>, _>>()?;
        knots.push((t, x));
    }
    PiecewiseLinearPath::new(knots).map_err(|e| CliError::Usage(format!("{}: {}", file.display(), e)))
}
