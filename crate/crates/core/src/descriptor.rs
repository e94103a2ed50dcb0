//! JSON descriptors for constructed codes.
//!
//! A descriptor is the portable record of a code: generators in
//! little-endian coefficient hex (plus a human-readable rendering),
//! declared distances, tolerances, and the slip signature table. Reading
//! one back reconstructs the code from the generators alone and
//! cross-checks every derived field, so a descriptor cannot drift from
//! what it claims to describe. Declared distances are trusted as labeled;
//! recomputing them is the distance tooling's job, not the parser's.

use serde::{Deserialize, Serialize};

use crate::code::{CyclicCode, Distance};
use crate::gf2::poly::BitPoly;
use crate::sync::QsyncCode;
use crate::Error;

/// One cyclic code: `[n, k]`, generator, and declared distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub n: usize,
    pub generator_hex: String,
    pub generator_pretty: String,
    pub k: usize,
    pub distance: Distance,
}

impl CodeDescriptor {
    pub fn from_code(code: &CyclicCode) -> Result<Self, Error> {
        let distance = code.distance().ok_or(Error::DistanceUnknown {
            role: "described",
        })?;
        Ok(CodeDescriptor {
            n: code.n(),
            generator_hex: code.generator().to_hex(),
            generator_pretty: code.generator().to_pretty(),
            k: code.k(),
            distance,
        })
    }

    /// Rebuilds the code from the hex generator and verifies the other
    /// fields against it.
    pub fn reconstruct(&self) -> Result<CyclicCode, Error> {
        let generator = BitPoly::from_hex(&self.generator_hex)?;
        let code = CyclicCode::from_generator(self.n, generator)?;
        if code.k() != self.k {
            return Err(Error::DescriptorMismatch {
                field: format!("k: declared {}, generator gives {}", self.k, code.k()),
            });
        }
        let pretty = BitPoly::from_pretty(&self.generator_pretty)?;
        if &pretty != code.generator() {
            return Err(Error::DescriptorMismatch {
                field: "generator_pretty disagrees with generator_hex".into(),
            });
        }
        Ok(code.with_distance(self.distance))
    }
}

/// One slip signature: `remainder_hex = x^a mod f` in coefficient hex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyncEntryDescriptor {
    pub a: i64,
    pub remainder_hex: String,
}

/// Full record of a constructed synchronizable code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsyncDescriptor {
    #[serde(rename = "C")]
    pub c: CodeDescriptor,
    #[serde(rename = "D")]
    pub d: CodeDescriptor,
    pub f_hex: String,
    pub a_l: usize,
    pub a_r: usize,
    pub n_ext: usize,
    pub k_logical: usize,
    pub sync_table: Vec<SyncEntryDescriptor>,
}

impl QsyncDescriptor {
    pub fn from_code(code: &QsyncCode) -> Result<Self, Error> {
        Ok(QsyncDescriptor {
            c: CodeDescriptor::from_code(code.phase_code())?,
            d: CodeDescriptor::from_code(code.bit_code())?,
            f_hex: code.sync_modulus().to_hex(),
            a_l: code.a_l(),
            a_r: code.a_r(),
            n_ext: code.n_ext(),
            k_logical: code.k_logical(),
            sync_table: code
                .sync_table()
                .iter()
                .map(|(a, r)| SyncEntryDescriptor {
                    a: *a,
                    remainder_hex: r.to_hex(),
                })
                .collect(),
        })
    }

    /// Reconstructs the code from the two generators and re-runs every
    /// construction check, then verifies the derived fields recorded in
    /// the descriptor.
    pub fn reconstruct(&self) -> Result<QsyncCode, Error> {
        let phase = self.c.reconstruct()?;
        let bit = self.d.reconstruct()?;
        let code = QsyncCode::build(phase, bit, self.a_l, self.a_r)?;
        if code.sync_modulus().to_hex() != self.f_hex {
            return Err(Error::DescriptorMismatch {
                field: "f_hex is not the quotient of the two generators".into(),
            });
        }
        if code.n_ext() != self.n_ext {
            return Err(Error::DescriptorMismatch {
                field: format!("n_ext: declared {}, built {}", self.n_ext, code.n_ext()),
            });
        }
        if code.k_logical() != self.k_logical {
            return Err(Error::DescriptorMismatch {
                field: format!(
                    "k_logical: declared {}, built {}",
                    self.k_logical,
                    code.k_logical()
                ),
            });
        }
        let built: Vec<SyncEntryDescriptor> = code
            .sync_table()
            .iter()
            .map(|(a, r)| SyncEntryDescriptor {
                a: *a,
                remainder_hex: r.to_hex(),
            })
            .collect();
        if built != self.sync_table {
            return Err(Error::DescriptorMismatch {
                field: "sync_table disagrees with the rebuilt signatures".into(),
            });
        }
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{bch_code, DistanceTag};

    fn forty_one() -> QsyncCode {
        QsyncCode::build(bch_code(5, 7).unwrap(), bch_code(5, 3).unwrap(), 4, 5).unwrap()
    }

    #[test]
    fn roundtrip_preserves_everything() {
        let code = forty_one();
        let desc = QsyncDescriptor::from_code(&code).unwrap();
        let json = serde_json::to_string_pretty(&desc).unwrap();
        let parsed: QsyncDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, desc);
        let rebuilt = parsed.reconstruct().unwrap();
        assert_eq!(rebuilt.sync_table(), code.sync_table());
        assert_eq!(rebuilt.phase_code().generator(), code.phase_code().generator());
        assert_eq!(rebuilt.k_logical(), 1);
    }

    #[test]
    fn json_uses_the_agreed_keys() {
        let code = forty_one();
        let desc = QsyncDescriptor::from_code(&code).unwrap();
        let v: serde_json::Value = serde_json::to_value(&desc).unwrap();
        for key in ["C", "D", "f_hex", "a_l", "a_r", "n_ext", "k_logical", "sync_table"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["C"]["distance"]["tag"], "designed");
        assert_eq!(v["sync_table"].as_array().unwrap().len(), 10);
        assert!(v["sync_table"][0].get("a").is_some());
        assert!(v["sync_table"][0].get("remainder_hex").is_some());
    }

    #[test]
    fn tampered_fields_are_rejected() {
        let code = forty_one();
        let desc = QsyncDescriptor::from_code(&code).unwrap();

        let mut wrong_k = desc.clone();
        wrong_k.c.k = 17;
        assert!(matches!(
            wrong_k.c.reconstruct(),
            Err(Error::DescriptorMismatch { .. })
        ));

        let mut wrong_f = desc.clone();
        wrong_f.f_hex = "01".into();
        assert!(matches!(
            wrong_f.reconstruct(),
            Err(Error::DescriptorMismatch { .. })
        ));

        let mut wrong_table = desc.clone();
        wrong_table.sync_table[0].a = 9;
        assert!(matches!(
            wrong_table.reconstruct(),
            Err(Error::DescriptorMismatch { .. })
        ));

        let mut wrong_pretty = desc;
        wrong_pretty.d.generator_pretty = "x+1".into();
        assert!(matches!(
            wrong_pretty.d.reconstruct(),
            Err(Error::DescriptorMismatch { .. })
        ));
    }

    #[test]
    fn distance_tags_serialize_lowercase() {
        let d = Distance {
            value: 3,
            tag: DistanceTag::Designed,
        };
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"value":3,"tag":"designed"}"#);
    }
}
