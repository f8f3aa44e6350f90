//! Multilinear maps that are graded antisymmetric in a run of algebra slots,
//! optionally followed by a fixed block of module slots.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{skew_normalize, Factors, Key, Space, Tensor};
use crate::rational::Rational;

/// One arity component of a structure map, stored on canonical keys: the
/// first `arity` indices are a sorted exterior key in `g`, the rest is a
/// basis key of `module`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMultiMap {
    g: Space,
    arity: usize,
    module: Factors,
    target: Factors,
    degree: i32,
    entries: BTreeMap<Key, Tensor>,
}

impl SkewMultiMap {
    pub fn new(g: Space, arity: usize, module: Factors, target: Factors, degree: i32) -> Self {
        SkewMultiMap {
            g,
            arity,
            module,
            target,
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn g(&self) -> &Space {
        &self.g
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn module(&self) -> &Factors {
        &self.module
    }

    pub fn target(&self) -> &Factors {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Key, &Tensor)> {
        self.entries.iter()
    }

    /// Degree of the source basis element named by a full key.
    pub fn source_degree(&self, key: &[u16]) -> i32 {
        let (x, m) = key.split_at(self.arity);
        self.g.key_degree(x) + self.module.degree(m)
    }

    /// Store a value on a key that is already canonical, without checks.
    pub(crate) fn put(&mut self, key: Key, value: Tensor) {
        debug_assert_eq!(key.len(), self.arity + self.module.len());
        debug_assert!(value
            .keys()
            .all(|k| self.target.degree(k) == self.source_degree(&key) + self.degree));
        if !value.is_zero() {
            self.entries.insert(key, value);
        }
    }

    /// Add `value` at an arbitrary (not necessarily sorted) algebra key,
    /// normalizing by graded antisymmetry and validating homogeneity.
    pub fn insert(&mut self, gkey: &[u16], mkey: &[u16], value: &Tensor) -> Result<()> {
        if gkey.len() != self.arity || mkey.len() != self.module.len() {
            return Err(Error::Shape(format!(
                "key of shape ({},{}) for a map of shape ({},{})",
                gkey.len(),
                mkey.len(),
                self.arity,
                self.module.len()
            )));
        }
        let expected = self.g.key_degree(gkey) + self.module.degree(mkey) + self.degree;
        for k in value.keys() {
            if k.len() != self.target.len() {
                return Err(Error::Shape(format!(
                    "output of length {} for target {:?}",
                    k.len(),
                    self.target
                )));
            }
            let d = self.target.degree(k);
            if d != expected {
                return Err(Error::Degree {
                    entry: self.render_key(gkey, mkey),
                    expected,
                    found: d,
                });
            }
        }
        let Some((canon, odd)) = skew_normalize(&self.g, gkey) else {
            return Ok(());
        };
        let mut key = canon;
        key.extend_from_slice(mkey);
        let entry = self.entries.entry(key.clone()).or_default();
        entry.add_scaled(value, &Rational::one().signed(odd));
        if entry.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    /// Value on a canonical algebra key followed by a module key.
    #[inline]
    pub fn get_sorted(&self, gkey: &[u16], mkey: &[u16]) -> Option<&Tensor> {
        let mut key: Key = gkey.into();
        key.extend_from_slice(mkey);
        self.entries.get(&key)
    }

    #[inline]
    pub fn get_key(&self, key: &[u16]) -> Option<&Tensor> {
        self.entries.get(key)
    }

    /// Value on an arbitrary algebra key: the stored tensor and whether the
    /// reordering sign is odd.
    pub fn eval(&self, gkey: &[u16], mkey: &[u16]) -> Option<(&Tensor, bool)> {
        let (mut canon, odd) = skew_normalize(&self.g, gkey)?;
        canon.extend_from_slice(mkey);
        self.entries.get(&canon).map(|t| (t, odd))
    }

    pub fn render_key(&self, gkey: &[u16], mkey: &[u16]) -> String {
        let mut parts: Vec<String> = gkey.iter().map(|&i| self.g.label(i).to_string()).collect();
        parts.extend(self.module.labels(mkey));
        format!("({})", parts.join(","))
    }

    pub fn render_full_key(&self, key: &[u16]) -> String {
        let (x, m) = key.split_at(self.arity);
        self.render_key(x, m)
    }

    fn same_shape(&self, other: &SkewMultiMap) -> bool {
        self.arity == other.arity
            && self.degree == other.degree
            && self.module == other.module
            && self.target == other.target
            && self.g == other.g
    }

    /// `self + c·other`.
    pub fn add_scaled(&mut self, other: &SkewMultiMap, c: &Rational) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::SpaceMismatch(format!(
                "adding maps of shapes {:?}->{:?} deg {} and {:?}->{:?} deg {}",
                self.module, self.target, self.degree, other.module, other.target, other.degree
            )));
        }
        for (k, v) in &other.entries {
            let e = self.entries.entry(k.clone()).or_default();
            e.add_scaled(v, c);
            if e.is_zero() {
                self.entries.remove(k);
            }
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Rational) -> SkewMultiMap {
        let mut out = SkewMultiMap::new(
            self.g.clone(),
            self.arity,
            self.module.clone(),
            self.target.clone(),
            self.degree,
        );
        if !c.is_zero() {
            for (k, v) in &self.entries {
                out.entries.insert(k.clone(), v.scaled(c));
            }
        }
        out
    }

    /// An empty map of the same shape.
    pub fn zero_like(&self) -> SkewMultiMap {
        self.scaled(&Rational::zero())
    }

    /// Entries where the two maps differ: `(key, self - other)`.
    pub fn difference(&self, other: &SkewMultiMap) -> Vec<(Key, Tensor)> {
        let empty = Tensor::new();
        let keys: std::collections::BTreeSet<&Key> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .filter_map(|k| {
                let a = self.entries.get(k).unwrap_or(&empty);
                let b = other.entries.get(k).unwrap_or(&empty);
                (a != b).then(|| (k.clone(), a.minus(b)))
            })
            .collect()
    }

    /// Remove every entry for which `keep` is false.
    pub fn retain(&mut self, mut keep: impl FnMut(&Key) -> bool) {
        self.entries.retain(|k, _| keep(k));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;

    #[test]
    fn insert_normalizes_and_evaluates_with_sign() {
        let g = GradedSpace::new("g", [("e", 0), ("f", 0), ("h", 0)])
            .unwrap()
            .into_space();
        let mut m = SkewMultiMap::new(g.clone(), 2, Factors::unit(), Factors::single(g.clone()), 0);
        m.insert(&[2, 0], &[], &Tensor::basis([0u16].into_iter().collect()))
            .unwrap();
        let (t, odd) = m.eval(&[2, 0], &[]).unwrap();
        assert!(odd);
        assert_eq!(t.get(&[0]), -Rational::one());
        let (t2, odd2) = m.eval(&[0, 2], &[]).unwrap();
        assert!(!odd2);
        assert_eq!(t2.get(&[0]), -Rational::one());
        assert!(m.eval(&[0, 0], &[]).is_none());
    }

    #[test]
    fn insert_rejects_inhomogeneous_values() {
        let g = GradedSpace::new("g", [("a", 0), ("b", 1)])
            .unwrap()
            .into_space();
        let mut m = SkewMultiMap::new(g.clone(), 1, Factors::unit(), Factors::single(g.clone()), 0);
        assert!(matches!(
            m.insert(&[0], &[], &Tensor::basis([1u16].into_iter().collect())),
            Err(Error::Degree { .. })
        ));
    }
}
