//! Storage for trainable parameters.
//!
//! All trainable state lives in one flat store, addressed by [`ParamId`].
//! Positivity-constrained quantities are stored in their unconstrained
//! reparameterization (log scales, pre-softplus Cholesky diagonals) so the
//! optimizer can take unconstrained steps.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Handle to one parameter array in a [`ParamStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamId(pub usize);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamEntry {
    pub name: String,
    #[serde(with = "array2_serde")]
    pub value: Array2<f64>,
    pub trainable: bool,
}

/// Flat collection of named parameter arrays.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ParamStore {
    entries: Vec<ParamEntry>,
}

impl ParamStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, name: impl Into<String>, value: Array2<f64>, trainable: bool) -> ParamId {
        let id = ParamId(self.entries.len());
        self.entries.push(ParamEntry { name: name.into(), value, trainable });
        id
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self, id: ParamId) -> &Array2<f64> {
        &self.entries[id.0].value
    }

    pub fn value_mut(&mut self, id: ParamId) -> &mut Array2<f64> {
        &mut self.entries[id.0].value
    }

    pub fn name(&self, id: ParamId) -> &str {
        &self.entries[id.0].name
    }

    pub fn is_trainable(&self, id: ParamId) -> bool {
        self.entries[id.0].trainable
    }

    pub fn set_trainable(&mut self, id: ParamId, trainable: bool) {
        self.entries[id.0].trainable = trainable;
    }

    pub fn ids(&self) -> impl Iterator<Item = ParamId> {
        (0..self.entries.len()).map(ParamId)
    }

    pub fn trainable_ids(&self) -> Vec<ParamId> {
        self.ids().filter(|&id| self.is_trainable(id)).collect()
    }

    /// Total number of trainable scalars.
    pub fn trainable_scalars(&self) -> usize {
        self.entries.iter().filter(|e| e.trainable).map(|e| e.value.len()).sum()
    }

    /// Fail if any entry contains a non-finite value.
    pub fn check_finite(&self) -> Result<()> {
        for e in &self.entries {
            if e.value.iter().any(|v| !v.is_finite()) {
                return Err(Error::Numerical(format!("parameter {} is not finite", e.name)));
            }
        }
        Ok(())
    }
}

/// Serde adapter for `Array2<f64>` as `{ rows, cols, data }`.
pub mod array2_serde {
    use ndarray::Array2;
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        rows: usize,
        cols: usize,
        data: Vec<f64>,
    }

    pub fn serialize<S: Serializer>(a: &Array2<f64>, s: S) -> Result<S::Ok, S::Error> {
        let repr = Repr {
            rows: a.nrows(),
            cols: a.ncols(),
            data: a.iter().cloned().collect(),
        };
        repr.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Array2<f64>, D::Error> {
        let repr = Repr::deserialize(d)?;
        Array2::from_shape_vec((repr.rows, repr.cols), repr.data)
            .map_err(|e| D::Error::custom(format!("bad array shape: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;

    #[test]
    fn register_and_lookup() {
        let mut store = ParamStore::new();
        let a = store.register("a", arr2(&[[1.0, 2.0]]), true);
        let b = store.register("b", arr2(&[[3.0]]), false);
        assert_eq!(store.len(), 2);
        assert_eq!(store.name(a), "a");
        assert!(store.is_trainable(a));
        assert!(!store.is_trainable(b));
        assert_eq!(store.trainable_ids(), vec![a]);
        assert_eq!(store.trainable_scalars(), 2);
    }

    #[test]
    fn finiteness_check_names_the_parameter() {
        let mut store = ParamStore::new();
        store.register("bad", arr2(&[[f64::NAN]]), true);
        match store.check_finite() {
            Err(Error::Numerical(msg)) => assert!(msg.contains("bad")),
            other => panic!("expected numerical error, got {other:?}"),
        }
    }

    #[test]
    fn array_serde_roundtrip_is_bit_exact() {
        let a = arr2(&[[0.1, -2.5e-17], [std::f64::consts::PI, 1.0 / 3.0]]);
        let mut store = ParamStore::new();
        store.register("p", a.clone(), true);
        let json = serde_json::to_string(&store).unwrap();
        let back: ParamStore = serde_json::from_str(&json).unwrap();
        let b = back.value(ParamId(0));
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
