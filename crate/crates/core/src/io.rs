//! JSON file formats for matrices, words, coverings and certificates.
//! Polynomials are stored in the text grammar of [`MultiPoly::parse`].

use std::path::Path;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, MultiPoly, PolyCtx};
use crate::factorize::FactorizationCertificate;
use crate::localglobal::CoveringData;
use crate::matrix::Matrix;
use crate::rootdata::{build_frame, GroupModel};
use crate::words::ElemWord;

/// `{"group":{"type":"A","rank":2},"nvars":1,"base":"Z","entries":[[..]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub group: GroupModel,
    pub nvars: usize,
    pub base: String,
    pub entries: Vec<Vec<String>>,
}

fn context(base: &str, nvars: usize) -> Result<PolyCtx> {
    Ok(PolyCtx::new(base.parse::<BaseRing>()?, nvars))
}

impl MatrixFile {
    pub fn from_matrix(group: GroupModel, m: &Matrix) -> Self {
        MatrixFile { group, nvars: m.ctx().nvars, base: m.ctx().base.to_string(), entries: m.to_text() }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        let m = Matrix::parse(context(&self.base, self.nvars)?, &self.entries)?;
        if m.size() != self.group.size() {
            return Err(Error::SizeMismatch { expected: self.group.size(), got: m.size() });
        }
        Ok(m)
    }
}

/// One letter `x_root(arg)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterRecord {
    pub root: Vec<i64>,
    pub arg: String,
}

fn letters_to_records(w: &ElemWord) -> Vec<LetterRecord> {
    w.letters()
        .iter()
        .map(|(r, t)| LetterRecord { root: w.rs().root_vector(*r).to_vec(), arg: t.to_string() })
        .collect()
}

fn records_to_word(group: GroupModel, ctx: PolyCtx, records: &[LetterRecord]) -> Result<ElemWord> {
    // rank-1 frames are allowed here so that certificates for small
    // matrices can still be replayed
    let rs = build_frame(group.kind, group.rank)?;
    let letters = records
        .iter()
        .map(|rec| Ok((rs.root_id(&rec.root)?, MultiPoly::parse(ctx, &rec.arg)?)))
        .collect::<Result<Vec<_>>>()?;
    ElemWord::new(rs, ctx, letters)
}

/// Word in product order with a header naming the group and ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordFile {
    pub group: GroupModel,
    pub base: String,
    pub nvars: usize,
    pub letters: Vec<LetterRecord>,
}

impl WordFile {
    pub fn from_word(w: &ElemWord) -> Self {
        WordFile {
            group: w.rs().model(),
            base: w.ctx().base.to_string(),
            nvars: w.ctx().nvars,
            letters: letters_to_records(w),
        }
    }

    pub fn to_word(&self) -> Result<ElemWord> {
        records_to_word(self.group, context(&self.base, self.nvars)?, &self.letters)
    }
}

mod bigints {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<Value> = v
            .iter()
            .map(|b| match i64::try_from(b) {
                Ok(i) => Value::from(i),
                Err(_) => Value::from(b.to_string()),
            })
            .collect();
        vals.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigInt>, D::Error> {
        let vals = Vec::<Value>::deserialize(de)?;
        vals.into_iter()
            .map(|v| match v {
                Value::Number(n) => n.to_string().parse().map_err(D::Error::custom),
                Value::String(s) => s.parse().map_err(D::Error::custom),
                other => Err(D::Error::custom(format!("expected an integer, got {other}"))),
            })
            .collect()
    }
}

/// `{"s": [2,3], "c": [-1,1], "k": [1,1]}` with `sum c_i s_i^k_i = 1`.
/// Integers that do not fit in 64 bits are written as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringFile {
    #[serde(with = "bigints")]
    pub s: Vec<BigInt>,
    #[serde(with = "bigints")]
    pub c: Vec<BigInt>,
    pub k: Vec<u32>,
}

impl CoveringFile {
    pub fn from_covering(cov: &CoveringData) -> Self {
        CoveringFile { s: cov.elems.clone(), c: cov.coeffs.clone(), k: cov.exponents.clone() }
    }

    pub fn to_covering(&self) -> Result<CoveringData> {
        CoveringData::from_parts(self.s.clone(), self.c.clone(), self.k.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub group: GroupModel,
    pub base: String,
    pub nvars: usize,
    pub target: Vec<Vec<String>>,
    pub word: Vec<LetterRecord>,
    pub residual: Vec<Vec<String>>,
    pub verified: bool,
    pub word_length: usize,
    pub max_degree: u32,
    pub wall_time_ms: u64,
}

/// Parsed certificate contents; nothing here has been checked yet.
#[derive(Clone, Debug)]
pub struct CertificateParts {
    pub group: GroupModel,
    pub target: Matrix,
    pub word: ElemWord,
    pub residual: Matrix,
    pub verified: bool,
}

impl CertificateFile {
    /// `timing = false` writes 0 for the wall time so output is reproducible.
    pub fn from_certificate(cert: &FactorizationCertificate, timing: bool) -> Self {
        let ctx = cert.target.ctx();
        CertificateFile {
            group: cert.model,
            base: ctx.base.to_string(),
            nvars: ctx.nvars,
            target: cert.target.to_text(),
            word: letters_to_records(&cert.word),
            residual: cert.residual_constant.to_text(),
            verified: cert.verified,
            word_length: cert.word_length(),
            max_degree: cert.max_degree(),
            wall_time_ms: if timing { cert.wall_time_ms } else { 0 },
        }
    }

    pub fn parts(&self) -> Result<CertificateParts> {
        let ctx = context(&self.base, self.nvars)?;
        let target = Matrix::parse(ctx, &self.target)?;
        let residual = Matrix::parse(ctx, &self.residual)?;
        let size = self.group.size();
        for m in [&target, &residual] {
            if m.size() != size {
                return Err(Error::SizeMismatch { expected: size, got: m.size() });
            }
        }
        let word = records_to_word(self.group, ctx, &self.word)?;
        Ok(CertificateParts { group: self.group, target, word, residual, verified: self.verified })
    }
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json(value)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootKind;

    const COHN3: &str = r#"{"group":{"type":"A","rank":2},"nvars":1,"base":"Z","entries":[["1+2*x1","x1^2","0"],["-4","1-2*x1","0"],["0","0","1"]]}"#;

    #[test]
    fn matrix_file_round_trip() {
        let f: MatrixFile = from_json(COHN3).unwrap();
        assert_eq!(f.group, GroupModel::new(RootKind::A, 2));
        let m = f.to_matrix().unwrap();
        assert_eq!(m[(0, 1)].to_string(), "x1^2");
        let back = MatrixFile::from_matrix(f.group, &m);
        assert_eq!(back.to_matrix().unwrap(), m);
        assert_eq!(back.entries[0][0], "2*x1 + 1");
        let wrong = MatrixFile { group: GroupModel::new(RootKind::A, 3), ..f };
        assert!(wrong.to_matrix().is_err());
    }

    #[test]
    fn word_file_round_trip() {
        let rs = crate::rootdata::build_root_system(RootKind::C, 2).unwrap();
        let ctx = PolyCtx::new(BaseRing::localized(2).unwrap(), 1);
        let w = ElemWord::new(rs.clone(), ctx, vec![(0, MultiPoly::parse(ctx, "x1/2").unwrap()), (3, MultiPoly::parse(ctx, "7").unwrap())]).unwrap();
        let file = WordFile::from_word(&w);
        let text = to_json(&file);
        assert!(text.contains("\"base\": \"Z[1/2]\""));
        assert_eq!(from_json::<WordFile>(&text).unwrap().to_word().unwrap(), w);
        let bad = r#"{"group":{"type":"C","rank":2},"base":"Z","nvars":1,"letters":[{"root":[1,1,1],"arg":"1"}]}"#;
        assert!(from_json::<WordFile>(bad).unwrap().to_word().is_err());
    }

    #[test]
    fn covering_file_round_trip() {
        let cov = CoveringData::new(vec![2.into(), 3.into()]).unwrap().raised(&[40, 30]).unwrap();
        let text = to_json(&CoveringFile::from_covering(&cov));
        let back: CoveringFile = from_json(&text).unwrap();
        assert_eq!(back.to_covering().unwrap().coeffs, cov.coeffs);
        let small: CoveringFile = from_json(r#"{"s":[2,3],"c":[-1,1],"k":[1,1]}"#).unwrap();
        small.to_covering().unwrap();
        let broken: CoveringFile = from_json(r#"{"s":[2,3],"c":[1,1],"k":[1,1]}"#).unwrap();
        assert!(broken.to_covering().is_err());
    }

    #[test]
    fn truncated_json_is_a_parse_error() {
        assert!(matches!(from_json::<MatrixFile>(&COHN3[..40]), Err(Error::Parse(_))));
    }
}
