use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Basis tensor: one basis index per tensor factor.
pub type Key = SmallVec<[u16; 8]>;

/// Finite graded vector space given by a labelled homogeneous basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    name: String,
    labels: Vec<String>,
    degrees: Vec<i32>,
}

pub type Space = Arc<GradedSpace>;

impl GradedSpace {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        basis: impl IntoIterator<Item = (S, i32)>,
    ) -> Result<Self> {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut seen = HashMap::new();
        for (l, d) in basis {
            let l: String = l.into();
            if seen.insert(l.clone(), ()).is_some() {
                return Err(Error::DuplicateLabel(l));
            }
            labels.push(l);
            degrees.push(d);
        }
        if labels.len() > u16::MAX as usize {
            return Err(Error::Invalid("basis too large".into()));
        }
        Ok(GradedSpace {
            name: name.into(),
            labels,
            degrees,
        })
    }

    pub fn into_space(self) -> Space {
        Arc::new(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: u16) -> &str {
        &self.labels[i as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: u16) -> i32 {
        self.degrees[i as usize]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn index_of(&self, label: &str) -> Result<u16> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|p| p as u16)
            .ok_or_else(|| Error::UnknownLabel {
                space: self.name.clone(),
                label: label.to_string(),
            })
    }

    /// `[min, max]` of the basis degrees, `None` for the zero space.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.degrees.iter().min()?;
        let hi = self.degrees.iter().max()?;
        Some((*lo, *hi))
    }

    /// The shifted space `V[n]`, whose degree `m` part is the degree `m + n`
    /// part of `V`.
    pub fn shifted(&self, n: i32) -> GradedSpace {
        GradedSpace {
            name: format!("{}[{}]", self.name, n),
            labels: self.labels.clone(),
            degrees: self.degrees.iter().map(|d| d - n).collect(),
        }
    }

    pub fn labels_of(&self, key: &[u16]) -> Vec<String> {
        key.iter().map(|&i| self.label(i).to_string()).collect()
    }

    /// Sum of the degrees of the basis elements named by `key`.
    pub fn key_degree(&self, key: &[u16]) -> i32 {
        key.iter().map(|&i| self.degrees[i as usize]).sum()
    }

    pub fn render(&self, key: &[u16]) -> String {
        key.iter()
            .map(|&i| self.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.name)?;
        for (i, (l, d)) in self.labels.iter().zip(&self.degrees).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}:{d}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered tensor product of spaces. The empty product is the ground field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Factors(Vec<Space>);

impl Factors {
    pub fn unit() -> Self {
        Factors(Vec::new())
    }

    pub fn single(s: Space) -> Self {
        Factors(vec![s])
    }

    pub fn new(v: Vec<Space>) -> Self {
        Factors(v)
    }

    pub fn power(s: &Space, n: usize) -> Self {
        Factors(vec![s.clone(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factor(&self, i: usize) -> &Space {
        &self.0[i]
    }

    pub fn spaces(&self) -> &[Space] {
        &self.0
    }

    pub fn concat(&self, other: &Factors) -> Factors {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Factors(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Factors {
        Factors(self.0[from..to].to_vec())
    }

    pub fn degree(&self, key: &[u16]) -> i32 {
        debug_assert_eq!(key.len(), self.0.len());
        key.iter().zip(&self.0).map(|(&i, s)| s.degree(i)).sum()
    }

    pub fn factor_degrees(&self, key: &[u16]) -> SmallVec<[i32; 8]> {
        key.iter().zip(&self.0).map(|(&i, s)| s.degree(i)).collect()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(|s| s.dim()).product()
    }

    /// All basis keys in lexicographic order.
    pub fn basis(&self) -> Vec<Key> {
        let mut out: Vec<Key> = vec![Key::new()];
        for s in &self.0 {
            let mut next = Vec::with_capacity(out.len() * s.dim());
            for k in &out {
                for i in 0..s.dim() as u16 {
                    let mut k2 = k.clone();
                    k2.push(i);
                    next.push(k2);
                }
            }
            out = next;
        }
        out
    }

    pub fn labels(&self, key: &[u16]) -> Vec<String> {
        key.iter()
            .zip(&self.0)
            .map(|(&i, s)| s.label(i).to_string())
            .collect()
    }

    pub fn parse_key<S: AsRef<str>>(&self, labels: &[S]) -> Result<Key> {
        if labels.len() != self.0.len() {
            return Err(Error::LengthMismatch {
                expected: self.0.len(),
                found: labels.len(),
            });
        }
        labels
            .iter()
            .zip(&self.0)
            .map(|(l, s)| s.index_of(l.as_ref()))
            .collect()
    }

    pub fn render(&self, key: &[u16]) -> String {
        if key.is_empty() {
            return "1".to_string();
        }
        self.labels(key).join("⊗")
    }

    pub fn name(&self) -> String {
        if self.0.is_empty() {
            return "K".to_string();
        }
        self.0
            .iter()
            .map(|s| s.name().to_string())
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

impl fmt::Debug for Factors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
