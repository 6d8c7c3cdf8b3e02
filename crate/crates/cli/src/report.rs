//! Versioned JSON documents: key-sorted, newline-terminated, byte-stable.

use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use incidence_core::interval::Interval;
use incidence_core::rational::{decimal_preview, Rounding};

pub const SCHEMA_VERSION: &str = "1";
const PREVIEW_DIGITS: usize = 16;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn document(command: &str, input_digest: &str, payload: Value) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": input_digest,
        "payload": payload,
    });
    // serde_json's default map is a BTreeMap, so keys come out sorted
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn rational(r: &BigRational) -> Value {
    json!({
        "exact": r.to_string(),
        "decimal": decimal_preview(r, PREVIEW_DIGITS, Rounding::Down),
    })
}

pub fn interval(iv: &Interval) -> Value {
    let (lo, hi) = iv.preview(PREVIEW_DIGITS);
    json!({
        "lo": iv.lo.to_string(),
        "hi": iv.hi.to_string(),
        "lo_decimal": lo,
        "hi_decimal": hi,
        "width_decimal": decimal_preview(&iv.width(), 4, Rounding::Up),
    })
}

pub fn claim(text: &str, holds: bool) -> Value {
    json!({ "claim": text, "holds": holds })
}
