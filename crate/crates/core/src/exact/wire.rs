use num_bigint::BigInt;
use serde_json::Value;

use super::{Cyclo24, Poly, Rational, Ring};

/// Exact JSON form of a scalar: rationals as `"p/q"`, Q(ζ₂₄) elements as
/// eight such strings, polynomials as their coefficient strings.
pub trait WireScalar {
    fn to_wire_value(&self) -> Value;
}

impl WireScalar for Rational {
    fn to_wire_value(&self) -> Value {
        Value::String(self.to_wire())
    }
}

impl WireScalar for BigInt {
    fn to_wire_value(&self) -> Value {
        Value::String(format!("{self}/1"))
    }
}

impl WireScalar for Cyclo24 {
    fn to_wire_value(&self) -> Value {
        Value::Array(self.to_wire().into_iter().map(Value::String).collect())
    }
}

impl<T: Ring + WireScalar> WireScalar for Poly<T> {
    fn to_wire_value(&self) -> Value {
        serde_json::json!({
            "low": self.low_exponent(),
            "coeffs": self
                .terms()
                .map(|(e, c)| serde_json::json!([e, c.to_wire_value()]))
                .collect::<Vec<_>>(),
        })
    }
}
