//! JSON output with every float written at 17 significant digits, so the
//! bytes are the same on every platform and parse back to the same `f64`.

use std::io::{self, Write};

use htk_core::kelvin::kelvin_from_harm4;
use htk_core::{HarmTensor, Mat3, Vec3};
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{json, Value};

struct Sci;

impl Formatter for Sci {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        CompactFormatter.write_f64(w, v as f64)
    }
}

pub fn to_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    value.serialize(&mut serde_json::Serializer::with_formatter(&mut buf, Sci))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn mat3(m: &Mat3) -> Value {
    json!(m.0)
}

pub fn vec3(v: Vec3) -> Value {
    json!(v.to_array())
}

/// Orders 1, 2 and 4 in their usual matrix shapes; other orders as the
/// polynomial coefficients in graded lexicographic order.
pub fn harmonic(h: &HarmTensor) -> Value {
    match h.order() {
        1 => vec3(h.to_vector()),
        2 => mat3(&h.to_matrix()),
        4 => json!(kelvin_from_harm4(h).expect("order checked").matrix()),
        _ => json!(h.as_sym().coeffs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_string(&json!({"a": 0.1, "b": [1.0, -2.5e-300], "n": 3})).unwrap();
        assert_eq!(s, r#"{"a":1.0000000000000001e-1,"b":[1.0000000000000000e0,-2.5000000000000000e-300],"n":3}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"].as_f64(), Some(0.1));
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(to_string(&json!({"x": f64::NAN})).unwrap(), r#"{"x":null}"#);
    }
}
