use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Circumference of the circle.
pub const TAU: &str = "tau";
/// Formal scaling variable; the only variable allowed negative exponents.
pub const LAMBDA: &str = "lambda";

/// Ordered list of variable names shared by a family of polynomials.
///
/// Names are unique, `tau` sits at index 0 whenever present and `lambda`,
/// when present, is last.
#[derive(Clone)]
pub struct VarRegistry(Arc<[String]>);

impl VarRegistry {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Registry("empty variable name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::Registry(format!("duplicate variable `{name}`")));
            }
        }
        if let Some(pos) = names.iter().position(|n| n == TAU) {
            if pos != 0 {
                return Err(Error::Registry(format!("`{TAU}` must be the first variable")));
            }
        }
        if let Some(pos) = names.iter().position(|n| n == LAMBDA) {
            if pos + 1 != names.len() {
                return Err(Error::Registry(format!("`{LAMBDA}` must be the last variable")));
            }
        }
        Ok(VarRegistry(names.into()))
    }

    pub fn empty() -> Self {
        VarRegistry(Arc::from(Vec::new()))
    }

    /// `[tau, g1, ..., g_{points-1}]`, the geometry of an n-point circle correlator.
    pub fn geometry(points: usize) -> Self {
        let mut names = vec![TAU.to_string()];
        names.extend((1..points).map(gap_name));
        VarRegistry(names.into())
    }

    /// The same registry with `lambda` appended (no-op if already there).
    pub fn with_lambda(&self) -> Self {
        if self.lambda_index().is_some() {
            return self.clone();
        }
        let mut names = self.0.to_vec();
        names.push(LAMBDA.to_string());
        VarRegistry(names.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn lambda_index(&self) -> Option<usize> {
        self.0.last().filter(|n| *n == LAMBDA).map(|_| self.0.len() - 1)
    }

    /// Union by name. `tau` is pinned first and `lambda` last; the rest keep
    /// the order of `self` followed by the new names of `other`.
    pub fn merge(&self, other: &VarRegistry) -> VarRegistry {
        if self == other {
            return self.clone();
        }
        let all = || self.0.iter().chain(other.0.iter());
        let mut names: Vec<String> = Vec::new();
        if all().any(|n| n == TAU) {
            names.push(TAU.to_string());
        }
        for n in all() {
            if n != TAU && n != LAMBDA && !names.contains(n) {
                names.push(n.clone());
            }
        }
        if all().any(|n| n == LAMBDA) {
            names.push(LAMBDA.to_string());
        }
        VarRegistry(names.into())
    }

    /// For every variable of `self`, its index in `target`.
    pub(crate) fn embedding(&self, target: &VarRegistry) -> Vec<usize> {
        self.0.iter().map(|n| target.index_of(n).expect("target registry is a superset")).collect()
    }
}

/// Name of the k-th gap variable (k ≥ 1).
pub fn gap_name(k: usize) -> String {
    format!("g{k}")
}

impl PartialEq for VarRegistry {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarRegistry {}

impl fmt::Debug for VarRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
