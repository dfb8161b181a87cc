//! JSON plumbing shared by the verification reports.

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::freed::{FreeDElement, Word};

pub const SCHEMA_VERSION: u32 = 1;

pub fn ser_bigint<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for k in self.letters() {
            seq.serialize_element(k)?;
        }
        seq.end()
    }
}

struct Term<'a>(&'a Word, &'a BigInt);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("word", self.0)?;
        st.serialize_field("c", &self.1.to_string())?;
        st.end()
    }
}

/// Serialized as a list of `{word, c}` with decimal-string coefficients.
impl Serialize for FreeDElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (w, c) in self.terms() {
            seq.serialize_element(&Term(w, c))?;
        }
        seq.end()
    }
}
