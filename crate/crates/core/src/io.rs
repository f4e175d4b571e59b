//! JSON schemas for every structure the command line reads or writes.
//!
//! Rationals are `[num, den]` pairs; a bare integer is accepted on input,
//! and numbers too large for 64 bits travel as decimal strings.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::groups::{validate_group, FiniteGroup, GroupAction};
use crate::leibniz::{DiLeibniz, StructureConstants};
use crate::linalg::{LinearMap, Matrix, Rational};
use crate::magma::{FiniteMagma, SetMap};
use crate::pairings::RackPairing;
use crate::ybe::SetSolution;

/// A parse failure with its position in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

/// Problems loading a file: unreadable, unparsable, or structurally invalid.
#[derive(Debug)]
pub enum LoadError {
    Io(String, std::io::Error),
    Parse(String, ParseError),
    Invalid(String, Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(p, e) => write!(f, "{p}: {e}"),
            LoadError::Parse(p, e) => write!(f, "{p}: {e}"),
            LoadError::Invalid(p, e) => write!(f, "{p}: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> std::result::Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        ParseError {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })
}

/// Reads `path` as `D` and converts it.
pub fn load<D, T>(path: &Path, convert: impl FnOnce(D) -> Result<T>) -> std::result::Result<T, LoadError>
where
    D: for<'de> Deserialize<'de>,
{
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(name.clone(), e))?;
    let dto = parse::<D>(&text).map_err(|e| LoadError::Parse(name.clone(), e))?;
    convert(dto).map_err(|e| LoadError::Invalid(name, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalDto(pub Value);

impl RationalDto {
    pub fn to_rational(&self) -> Result<Rational> {
        let part = |v: &Value| -> Result<BigInt> {
            match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Malformed(format!("{n} is not an integer"))),
                Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| Error::Malformed(format!("{s:?} is not an integer"))),
                other => Err(Error::Malformed(format!("{other} is not an integer"))),
            }
        };
        let (num, den) = match &self.0 {
            Value::Array(pair) if pair.len() == 2 => (part(&pair[0])?, part(&pair[1])?),
            v @ (Value::Number(_) | Value::String(_)) => (part(v)?, BigInt::from(1)),
            other => return Err(Error::Malformed(format!("{other} is not a rational [num, den]"))),
        };
        if den.is_zero() {
            return Err(Error::Malformed("zero denominator".into()));
        }
        Ok(Rational::new(num, den))
    }

    pub fn from_rational(r: &Rational) -> Self {
        let part = |b: &BigInt| match b.to_i64() {
            Some(i) => Value::from(i),
            None => Value::String(b.to_string()),
        };
        RationalDto(Value::Array(vec![part(r.numer()), part(r.denom())]))
    }
}

fn rationals(v: &[RationalDto]) -> Result<Vec<Rational>> {
    v.iter().map(RationalDto::to_rational).collect()
}

fn dtos(v: &[Rational]) -> Vec<RationalDto> {
    v.iter().map(RationalDto::from_rational).collect()
}

fn expect_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::SizeMismatch(format!("{what} has {got} entries, expected {want}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagmaDto {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl MagmaDto {
    pub fn into_magma(self) -> Result<FiniteMagma> {
        expect_len("table", self.table.len(), self.size)?;
        if let Some(l) = &self.labels {
            expect_len("labels", l.len(), self.size)?;
        }
        FiniteMagma::new(self.table)
    }

    pub fn from_magma(m: &FiniteMagma) -> Self {
        MagmaDto {
            size: m.size(),
            table: m.rows(),
            labels: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDto {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupDto {
    pub fn into_group(self) -> Result<FiniteGroup> {
        let stated = self.identity;
        let m = MagmaDto {
            size: self.size,
            table: self.table,
            labels: self.labels,
        }
        .into_magma()?;
        let g = validate_group(m)?;
        if let Some(e) = stated.filter(|&e| e != g.identity()) {
            return Err(Error::NotAGroup(format!("{e} is not the identity")));
        }
        Ok(g)
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDto {
            size: g.order(),
            table: g.magma().rows(),
            identity: Some(g.identity()),
            labels: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDto {
    pub group: GroupDto,
    pub set_size: usize,
    pub phi: Vec<Vec<usize>>,
}

impl ActionDto {
    pub fn into_action(self) -> Result<GroupAction> {
        GroupAction::new(self.group.into_group()?, self.set_size, self.phi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDto {
    pub size: usize,
    pub map: Vec<usize>,
}

impl OperatorDto {
    pub fn into_map(self) -> Result<SetMap> {
        expect_len("map", self.map.len(), self.size)?;
        SetMap::new(self.map, self.size)
    }

    pub fn from_map(a: &SetMap) -> Self {
        OperatorDto {
            size: a.len(),
            map: a.image().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingDto {
    pub size: usize,
    pub diamond: Vec<Vec<usize>>,
    pub blackdiamond: Vec<Vec<usize>>,
}

impl PairingDto {
    pub fn into_tables(self) -> Result<(FiniteMagma, FiniteMagma)> {
        expect_len("diamond", self.diamond.len(), self.size)?;
        expect_len("blackdiamond", self.blackdiamond.len(), self.size)?;
        Ok((FiniteMagma::new(self.diamond)?, FiniteMagma::new(self.blackdiamond)?))
    }

    pub fn from_pairing(p: &RackPairing) -> Self {
        PairingDto {
            size: p.size(),
            diamond: p.diamond.rows(),
            blackdiamond: p.blackdiamond.rows(),
        }
    }
}

/// Two group tables on one set, for skew braces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDto {
    pub size: usize,
    pub dot: Vec<Vec<usize>>,
    pub bullet: Vec<Vec<usize>>,
}

impl BraceDto {
    pub fn into_tables(self) -> Result<(FiniteMagma, FiniteMagma)> {
        expect_len("dot", self.dot.len(), self.size)?;
        expect_len("bullet", self.bullet.len(), self.size)?;
        Ok((FiniteMagma::new(self.dot)?, FiniteMagma::new(self.bullet)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiRackDto {
    pub size: usize,
    pub diamond: Vec<Vec<usize>>,
    pub tri: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDto {
    pub dim: usize,
    pub c: Vec<Vec<Vec<RationalDto>>>,
}

impl StructureDto {
    pub fn into_constants(self) -> Result<StructureConstants> {
        let c = self
            .c
            .iter()
            .map(|a| a.iter().map(|b| rationals(b)).collect())
            .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
        StructureConstants::new(self.dim, c)
    }

    pub fn from_constants(s: &StructureConstants) -> Self {
        StructureDto {
            dim: s.dim(),
            c: s
                .to_nested()
                .iter()
                .map(|a| a.iter().map(|b| dtos(b)).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiLeibnizDto {
    pub dim: usize,
    pub left: StructureDto,
    pub right: StructureDto,
}

impl DiLeibnizDto {
    pub fn into_di_leibniz(self) -> Result<DiLeibniz> {
        let left = self.left.into_constants()?;
        let right = self.right.into_constants()?;
        if left.dim() != self.dim {
            return Err(Error::SizeMismatch("di-Leibniz dim".into()));
        }
        DiLeibniz::new(left, right)
    }

    pub fn from_di_leibniz(d: &DiLeibniz) -> Self {
        DiLeibnizDto {
            dim: d.dim(),
            left: StructureDto::from_constants(&d.left),
            right: StructureDto::from_constants(&d.right),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMapDto {
    pub rows: usize,
    pub cols: usize,
    pub m: Vec<Vec<RationalDto>>,
}

impl LinearMapDto {
    pub fn into_matrix(self) -> Result<LinearMap> {
        expect_len("matrix", self.m.len(), self.rows)?;
        let rows = self
            .m
            .iter()
            .map(|r| {
                expect_len("matrix row", r.len(), self.cols)?;
                rationals(r)
            })
            .collect::<Result<Vec<_>>>()?;
        if self.rows == 0 {
            return Ok(Matrix::zeros(0, self.cols));
        }
        Matrix::from_rows(rows)
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        LinearMapDto {
            rows: m.rows(),
            cols: m.cols(),
            m: m.to_rows().iter().map(|r| dtos(r)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDto {
    pub size: usize,
    pub r: Vec<Vec<(usize, usize)>>,
}

impl SolutionDto {
    pub fn into_solution(self) -> Result<SetSolution> {
        expect_len("r", self.r.len(), self.size)?;
        SetSolution::new(self.r)
    }

    pub fn from_solution(s: &SetSolution) -> Self {
        SolutionDto {
            size: s.size(),
            r: s.rows(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDto {
    pub group: GroupDto,
    pub coeffs: Vec<RationalDto>,
}

impl ElementDto {
    pub fn into_parts(self) -> Result<(FiniteGroup, Vec<Rational>)> {
        let g = self.group.into_group()?;
        let coeffs = rationals(&self.coeffs)?;
        expect_len("coeffs", coeffs.len(), g.order())?;
        Ok((g, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn rational_forms() {
        let one_half: RationalDto = parse("[2, 4]").unwrap();
        assert_eq!(one_half.to_rational().unwrap(), rat(1, 2));
        let three: RationalDto = parse("3").unwrap();
        assert_eq!(three.to_rational().unwrap(), rat(3, 1));
        let big: RationalDto = parse(r#"["100000000000000000000", 1]"#).unwrap();
        let r = big.to_rational().unwrap();
        assert_eq!(RationalDto::from_rational(&r), big);
        assert!(parse::<RationalDto>("[1, 0]").unwrap().to_rational().is_err());
        assert_eq!(
            serde_json::to_string(&RationalDto::from_rational(&rat(-3, 6))).unwrap(),
            "[-1,2]"
        );
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = parse::<MagmaDto>("{\n  \"size\": 2,\n  \"table\": [[0, 1], [1 0]]\n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.column > 0);
    }

    #[test]
    fn round_trips() {
        let m = FiniteMagma::flip(3);
        let dto = MagmaDto::from_magma(&m);
        assert_eq!(dto.clone().into_magma().unwrap(), m);
        let s = crate::leibniz::examples::sl2();
        assert_eq!(StructureDto::from_constants(&s).into_constants().unwrap(), s);
        let p = crate::leibniz::examples::sl2_nilpotent_averaging(rat(2, 3));
        assert_eq!(LinearMapDto::from_matrix(&p).into_matrix().unwrap(), p);
        let g = crate::groups::symmetric(3);
        assert_eq!(GroupDto::from_group(&g).into_group().unwrap(), g);
        let sol = SetSolution::swap(2);
        assert_eq!(SolutionDto::from_solution(&sol).into_solution().unwrap(), sol);
        let bad = GroupDto {
            identity: Some(1),
            ..GroupDto::from_group(&g)
        };
        assert!(bad.into_group().is_err());
    }
}
