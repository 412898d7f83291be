//! Matching functions `{0,1,*}^m → {0,1,*}` as explicit tables, and the
//! monotonicity test that separates propagatable functions from the rest.

use std::fmt;

use crate::error::ModelError;
use crate::model::TriValue;

/// Largest arity accepted for exhaustive tables (3^8 = 6561 rows).
pub const MAX_TABLE_ARITY: usize = 8;

/// `f_{q,m}`: `0` once at least `threshold` inputs are `1`, `*` otherwise.
pub fn filtering_value(threshold: usize, inputs: &[TriValue]) -> Result<TriValue, ModelError> {
    if threshold == 0 {
        return Err(ModelError::ZeroThreshold);
    }
    let ones = inputs.iter().filter(|&&v| v == TriValue::One).count();
    Ok(if ones >= threshold {
        TriValue::Zero
    } else {
        TriValue::Unset
    })
}

/// A total map from `{0,1,*}^arity` to `{0,1,*}`.
///
/// Rows are indexed in mixed radix with position 0 least significant and
/// digits `*`=0, `0`=1, `1`=2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingTable {
    arity: usize,
    rows: Vec<TriValue>,
}

/// Two comparable inputs `lower ≼ upper` whose images are not comparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityViolation {
    pub lower: Vec<TriValue>,
    pub upper: Vec<TriValue>,
    pub lower_image: TriValue,
    pub upper_image: TriValue,
}

impl fmt::Display for MonotonicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[TriValue]| v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "({}) ≼ ({}) but f gives {} then {}",
            show(&self.lower),
            show(&self.upper),
            self.lower_image,
            self.upper_image
        )
    }
}

impl MatchingTable {
    pub fn from_rows(arity: usize, rows: Vec<TriValue>) -> Result<MatchingTable, ModelError> {
        if arity > MAX_TABLE_ARITY {
            return Err(ModelError::ArityTooLarge(arity));
        }
        let expected = 3usize.pow(arity as u32);
        if rows.len() != expected {
            return Err(ModelError::TableSize {
                expected,
                got: rows.len(),
            });
        }
        Ok(MatchingTable { arity, rows })
    }

    pub fn from_fn<F>(arity: usize, mut f: F) -> Result<MatchingTable, ModelError>
    where
        F: FnMut(&[TriValue]) -> TriValue,
    {
        if arity > MAX_TABLE_ARITY {
            return Err(ModelError::ArityTooLarge(arity));
        }
        let rows = (0..3usize.pow(arity as u32))
            .map(|i| f(&Self::decode(arity, i)))
            .collect();
        Ok(MatchingTable { arity, rows })
    }

    /// The table of `f_{threshold,arity}`.
    pub fn filtering(threshold: usize, arity: usize) -> Result<MatchingTable, ModelError> {
        if threshold == 0 {
            return Err(ModelError::ZeroThreshold);
        }
        Self::from_fn(arity, |xs| {
            filtering_value(threshold, xs).expect("threshold checked above")
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, inputs: &[TriValue]) -> TriValue {
        assert_eq!(inputs.len(), self.arity);
        self.rows[Self::encode(inputs)]
    }

    fn encode(inputs: &[TriValue]) -> usize {
        inputs.iter().rev().fold(0, |acc, v| acc * 3 + v.digit())
    }

    fn decode(arity: usize, mut index: usize) -> Vec<TriValue> {
        (0..arity)
            .map(|_| {
                let d = index % 3;
                index /= 3;
                TriValue::from_digit(d)
            })
            .collect()
    }

    /// Checks `X ≼ Y ⇒ t(X) ≼ t(Y)` for every pair of inputs.
    ///
    /// The order on tuples is generated by raising a single `*` to `0` or
    /// `1`, so only those covering pairs are visited. The first violation in
    /// row order is returned.
    pub fn check_monotone(&self) -> Result<(), MonotonicityViolation> {
        for (index, &image) in self.rows.iter().enumerate() {
            let mut stride = 1;
            let mut rest = index;
            for _ in 0..self.arity {
                if rest % 3 == TriValue::Unset.digit() {
                    for raised in [TriValue::Zero, TriValue::One] {
                        let upper_index = index + stride * raised.digit();
                        let upper_image = self.rows[upper_index];
                        if !image.precedes(upper_image) {
                            return Err(MonotonicityViolation {
                                lower: Self::decode(self.arity, index),
                                upper: Self::decode(self.arity, upper_index),
                                lower_image: image,
                                upper_image,
                            });
                        }
                    }
                }
                rest /= 3;
                stride *= 3;
            }
        }
        Ok(())
    }
}

/// `true` iff the table is monotone, i.e. computable by unit propagation.
pub fn is_monotone_matching(t: &MatchingTable) -> bool {
    t.check_monotone().is_ok()
}
