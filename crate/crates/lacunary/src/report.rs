//! The single JSON envelope every CLI run prints, plus the shared
//! serializers that keep big integers and ring tags textual: exact values
//! never pass through floating point or fixed-width integers on the way
//! out.

use num_bigint::BigInt;
use serde::ser::Serializer;
use serde::Serialize;
use serde_json::Value;

use crate::ring::RingTag;
use crate::series::{BiSeries, TruncSeries};

/// Envelope for one command invocation. `params` echoes the inputs after
/// defaulting so a run can be reproduced from its own output alone.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub params: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value, result: Value) -> Self {
        Report {
            schema_version: 1,
            command: command.into(),
            params,
            result,
            verified: None,
            elapsed_ms: 0,
        }
    }

    pub fn verified(mut self, ok: bool) -> Self {
        self.verified = Some(ok);
        self
    }

    pub fn elapsed_ms(mut self, ms: u128) -> Self {
        self.elapsed_ms = ms;
        self
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// Big integers as decimal strings.
pub fn ser_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

pub fn ser_opt_bigint_vec<S: Serializer>(
    v: &Option<Vec<BigInt>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(list) => s.collect_seq(list.iter().map(|b| b.to_string())),
    }
}

/// Ring tags by their display name, e.g. "Z" or "F5".
pub fn ser_ring<S: Serializer>(ring: &RingTag, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(ring)
}

/// A univariate series as `{ring, truncation, terms}` with sparse text
/// terms.
pub fn series_json(f: &TruncSeries) -> Value {
    serde_json::json!({
        "ring": f.ring().to_string(),
        "truncation": f.order(),
        "terms": f.to_text(),
    })
}

/// A bivariate series as `{ring, truncationX, truncationY, terms}`.
pub fn biseries_json(f: &BiSeries) -> Value {
    serde_json::json!({
        "ring": f.ring().to_string(),
        "truncationX": f.nx(),
        "truncationY": f.ny(),
        "terms": f.to_text(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SmithForm;

    #[test]
    fn report_envelope_shape() {
        let r = Report::new("rank", serde_json::json!({"nx": 4}), serde_json::json!({"rank": 1}))
            .verified(true)
            .elapsed_ms(7);
        let v: Value = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(v["schemaVersion"], 1);
        assert_eq!(v["command"], "rank");
        assert_eq!(v["params"]["nx"], 4);
        assert_eq!(v["result"]["rank"], 1);
        assert_eq!(v["verified"], true);
        assert_eq!(v["elapsedMs"], 7);
    }

    #[test]
    fn verified_is_omitted_when_unset() {
        let r = Report::new("specker", Value::Null, Value::Null);
        let v: Value = serde_json::from_str(&r.to_json_string()).unwrap();
        assert!(v.get("verified").is_none());
    }

    #[test]
    fn big_integers_serialize_as_decimal_strings() {
        let form = SmithForm {
            invariant_factors: vec![BigInt::from(2), BigInt::parse_bytes(b"36893488147419103232", 10).unwrap()],
            rank: 2,
        };
        let v = serde_json::to_value(&form).unwrap();
        assert_eq!(v["invariantFactors"][0], "2");
        // 2^65 survives exactly, which f64-backed JSON numbers would not.
        assert_eq!(v["invariantFactors"][1], "36893488147419103232");
    }

    #[test]
    fn series_render_with_ring_and_window() {
        let f = TruncSeries::from_terms_i64(RingTag::IntZ, 5, &[(1, 0), (-2, 3)]);
        let v = series_json(&f);
        assert_eq!(v["ring"], "Z");
        assert_eq!(v["truncation"], 5);
        assert_eq!(v["terms"], "1 - 2*x^3");

        let g = BiSeries::from_terms_i64(RingTag::fp(3).unwrap(), 2, 3, &[(2, 1, 2)]);
        let w = biseries_json(&g);
        assert_eq!(w["ring"], "F3");
        assert_eq!(w["truncationX"], 2);
        assert_eq!(w["truncationY"], 3);
        assert_eq!(w["terms"], "2*x^1*y^2");
    }
}
