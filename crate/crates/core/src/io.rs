//! JSON documents for matrices, block matrices and linear maps.
//!
//! ```text
//! matrix:  {"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}
//! block:   {"m":2,"n":1,"rows":2,"cols":2,"data":[...]}
//! map:     {"n":2,"k":2,"basis_images":[<matrix>, ...]}   // Φ(E_ij) in (i, j) row-major order
//! ```
//!
//! Entries are `[re, im]` pairs in row-major order. Floats are written in shortest
//! round-trip form, so `parse(serialize(x))` reproduces every finite double bit for bit.

use std::path::Path;

use serde::ser::SerializeTuple;
use serde::{Deserialize, Serialize, Serializer};

use crate::blockops::BlockMatrix;
use crate::densemat::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::maps::LinearMapRep;

/// A float that is written as a JSON integer when that loses nothing.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(transparent)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.0;
        let integral = v.fract() == 0.0 && v.abs() < 1e15 && !(v == 0.0 && v.is_sign_negative());
        if integral {
            s.serialize_i64(v as i64)
        } else {
            s.serialize_f64(v)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
struct Entry(Num, Num);

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.0)?;
        t.serialize_element(&self.1)?;
        t.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    rows: usize,
    cols: usize,
    data: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    m: usize,
    n: usize,
    rows: usize,
    cols: usize,
    data: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    n: usize,
    k: usize,
    basis_images: Vec<MatrixDoc>,
}

impl From<&ComplexMatrix> for MatrixDoc {
    fn from(m: &ComplexMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .data()
                .iter()
                .map(|z| Entry(Num(z.re), Num(z.im)))
                .collect(),
        }
    }
}

impl From<&BlockMatrix> for BlockDoc {
    fn from(b: &BlockMatrix) -> Self {
        let MatrixDoc { rows, cols, data } = MatrixDoc::from(b.mat());
        BlockDoc {
            m: b.m(),
            n: b.n(),
            rows,
            cols,
            data,
        }
    }
}

impl From<&LinearMapRep> for MapDoc {
    fn from(map: &LinearMapRep) -> Self {
        MapDoc {
            n: map.n(),
            k: map.k(),
            basis_images: map.basis_images().iter().map(MatrixDoc::from).collect(),
        }
    }
}

fn to_matrix(rows: usize, cols: usize, data: Vec<Entry>, ctx: &str) -> Result<ComplexMatrix> {
    if data.len() != rows * cols {
        return Err(Error::Validation(format!(
            "{ctx}: \"data\" has {} entries but rows*cols = {}",
            data.len(),
            rows * cols
        )));
    }
    if let Some(pos) = data
        .iter()
        .position(|e| !(e.0 .0.is_finite() && e.1 .0.is_finite()))
    {
        return Err(Error::Validation(format!(
            "{ctx}: data[{pos}] is not finite"
        )));
    }
    ComplexMatrix::new(
        rows,
        cols,
        data.into_iter().map(|e| C64::new(e.0 .0, e.1 .0)).collect(),
    )
}

impl TryFrom<MatrixDoc> for ComplexMatrix {
    type Error = Error;

    fn try_from(d: MatrixDoc) -> Result<Self> {
        to_matrix(d.rows, d.cols, d.data, "matrix")
    }
}

impl TryFrom<BlockDoc> for BlockMatrix {
    type Error = Error;

    fn try_from(d: BlockDoc) -> Result<Self> {
        if d.m * d.n != d.rows || d.rows != d.cols {
            return Err(Error::Validation(format!(
                "block matrix: m*n = {} does not match a {}x{} matrix",
                d.m * d.n,
                d.rows,
                d.cols
            )));
        }
        let mat = to_matrix(d.rows, d.cols, d.data, "block matrix")?;
        BlockMatrix::new(d.m, d.n, mat).map_err(|e| Error::Validation(e.to_string()))
    }
}

impl TryFrom<MapDoc> for LinearMapRep {
    type Error = Error;

    fn try_from(d: MapDoc) -> Result<Self> {
        let images = d
            .basis_images
            .into_iter()
            .enumerate()
            .map(|(i, img)| to_matrix(img.rows, img.cols, img.data, &format!("basis_images[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        LinearMapRep::new(d.n, d.k, images).map_err(|e| Error::Validation(e.to_string()))
    }
}

/// Any of the three document kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Matrix(ComplexMatrix),
    Block(BlockMatrix),
    Map(LinearMapRep),
}

fn parse_err(e: serde_json::Error) -> Error {
    if e.is_data() || e.is_syntax() || e.is_eof() {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    } else {
        Error::Parse(e.to_string())
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    serde_json::from_str::<MatrixDoc>(text)
        .map_err(parse_err)?
        .try_into()
}

pub fn parse_block(text: &str) -> Result<BlockMatrix> {
    serde_json::from_str::<BlockDoc>(text)
        .map_err(parse_err)?
        .try_into()
}

pub fn parse_map(text: &str) -> Result<LinearMapRep> {
    serde_json::from_str::<MapDoc>(text)
        .map_err(parse_err)?
        .try_into()
}

/// Parses whichever document kind `text` holds, told apart by its keys.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("top-level JSON value must be an object".into()))?;
    if obj.contains_key("basis_images") {
        Ok(Document::Map(parse_map(text)?))
    } else if obj.contains_key("m") {
        Ok(Document::Block(parse_block(text)?))
    } else {
        Ok(Document::Matrix(parse_matrix(text)?))
    }
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixDoc::from(m)).expect("matrix serialises")
}

pub fn block_to_json(b: &BlockMatrix) -> String {
    serde_json::to_string(&BlockDoc::from(b)).expect("block matrix serialises")
}

pub fn map_to_json(map: &LinearMapRep) -> String {
    serde_json::to_string(&MapDoc::from(map)).expect("map serialises")
}

pub fn read_document(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        Error::Validation(msg) => Error::Validation(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::BuiltinMap;

    #[test]
    fn identity_serialises_compactly() {
        assert_eq!(
            matrix_to_json(&ComplexMatrix::identity(2)),
            r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}"#
        );
    }

    #[test]
    fn awkward_values_round_trip() {
        let vals = [
            C64::new(-0.0, 0.1),
            C64::new(1e-300, -5e-324),
            C64::new(1e15, 2.5e16),
            C64::new(f64::MAX, f64::MIN_POSITIVE),
            C64::new(1.0 / 3.0, -2.0),
        ];
        let m = ComplexMatrix::new(1, 5, vals.to_vec()).unwrap();
        let back = parse_matrix(&matrix_to_json(&m)).unwrap();
        for (a, b) in m.data().iter().zip(back.data()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn block_shape_mismatch_is_rejected() {
        let doc = r#"{"m":2,"n":3,"rows":4,"cols":4,"data":[]}"#;
        assert!(matches!(parse_block(doc), Err(Error::Validation(_))));
        let doc = r#"{"rows":2,"cols":2,"data":[[1,0]]}"#;
        assert!(matches!(parse_matrix(doc), Err(Error::Validation(_))));
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = parse_matrix("{\"rows\":2,\n\"cols\":\"x\"}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_matrix("[1,2]"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_matrix(r#"{"rows":1,"cols":1,"data":[[1e999,0]]}"#),
            Err(Error::Parse(_) | Error::Validation(_))
        ));
    }

    #[test]
    fn document_kind_detection() {
        let b = BlockMatrix::identity(2, 2);
        assert_eq!(
            parse_document(&block_to_json(&b)).unwrap(),
            Document::Block(b)
        );
        let map = LinearMapRep::builtin(BuiltinMap::Psi, 2).unwrap();
        assert_eq!(
            parse_document(&map_to_json(&map)).unwrap(),
            Document::Map(map)
        );
        let m = ComplexMatrix::identity(3);
        assert_eq!(
            parse_document(&matrix_to_json(&m)).unwrap(),
            Document::Matrix(m)
        );
    }

    #[test]
    fn map_document_validation() {
        let doc = r#"{"n":1,"k":2,"basis_images":[{"rows":1,"cols":1,"data":[[1,0]]}]}"#;
        assert!(matches!(parse_map(doc), Err(Error::Validation(_))));
    }
}
