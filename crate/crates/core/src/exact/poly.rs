//! Sparse multivariate polynomials over the rationals, Laurent in `lambda`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::rational::Rational;
use super::registry::{VarRegistry, LAMBDA};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[i32; 6]>);

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(SmallVec::from_vec(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn embed(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut out = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.0.iter().enumerate() {
            out[map[i]] = e;
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the variables of a [`VarRegistry`]; no zero coefficients are stored.
///
/// Equality is by value: polynomials over different registries compare equal
/// when they agree after merging the registries.
#[derive(Clone)]
pub struct SparsePoly {
    registry: VarRegistry,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(registry: &VarRegistry) -> Self {
        SparsePoly { registry: registry.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(registry: &VarRegistry, c: Rational) -> Self {
        let mut p = SparsePoly::zero(registry);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(registry.len()), c);
        }
        p
    }

    pub fn one(registry: &VarRegistry) -> Self {
        SparsePoly::constant(registry, Rational::one())
    }

    /// The variable `name` itself.
    pub fn var(registry: &VarRegistry, name: &str) -> Result<Self> {
        SparsePoly::monomial(registry, &[(name, 1)], Rational::one())
    }

    /// `coef * Π name^exp`.
    pub fn monomial(registry: &VarRegistry, powers: &[(&str, i32)], coef: Rational) -> Result<Self> {
        let mut exps = vec![0; registry.len()];
        for &(name, e) in powers {
            let idx = registry.index_of(name).ok_or_else(|| Error::Registry(format!("unknown variable `{name}`")))?;
            exps[idx] += e;
        }
        SparsePoly::from_terms(registry, [(exps, coef)])
    }

    /// Builds from raw terms, summing duplicates and checking exponent signs.
    pub fn from_terms<I>(registry: &VarRegistry, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let lambda = registry.lambda_index();
        let mut p = SparsePoly::zero(registry);
        for (exps, coef) in terms {
            if exps.len() != registry.len() {
                return Err(Error::DimensionMismatch { expected: registry.len(), found: exps.len() });
            }
            if let Some((i, _)) = exps.iter().enumerate().find(|&(i, &e)| e < 0 && Some(i) != lambda) {
                return Err(Error::NegativeExponent(registry.names()[i].clone()));
            }
            p.add_term(Monomial::new(exps), coef);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn registry(&self) -> &VarRegistry {
        &self.registry
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.exps().iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Re-expresses the polynomial over a superset registry.
    pub fn embed(&self, target: &VarRegistry) -> SparsePoly {
        if &self.registry == target {
            return self.clone();
        }
        let map = self.registry.embedding(target);
        SparsePoly {
            registry: target.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.embed(&map, target.len()), c.clone())).collect(),
        }
    }

    fn aligned(a: &SparsePoly, b: &SparsePoly) -> (VarRegistry, SparsePoly, SparsePoly) {
        let reg = a.registry.merge(&b.registry);
        (reg.clone(), a.embed(&reg), b.embed(&reg))
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(&self.registry);
        }
        SparsePoly {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// In-place `self += other * c`; registries must already agree.
    pub(crate) fn add_scaled_assign(&mut self, other: &SparsePoly, c: &Rational) {
        debug_assert_eq!(self.registry, other.registry);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// In-place `self += a * b`; registries must already agree.
    pub(crate) fn add_product_assign(&mut self, a: &SparsePoly, b: &SparsePoly) {
        debug_assert_eq!(a.registry, b.registry);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(&self.registry);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; every registry variable must be assigned.
    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let values = self
            .registry
            .names()
            .iter()
            .map(|n| point.get(n).cloned().ok_or_else(|| Error::MissingAssignment(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    t *= values[i].pow(e).map_err(|_| Error::ZeroDivision(self.registry.names()[i].clone()))?;
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Substitutes `lambda = value` and drops `lambda` from the registry.
    pub fn eval_lambda(&self, value: &Rational) -> Result<SparsePoly> {
        let Some(li) = self.registry.lambda_index() else {
            return Ok(self.clone());
        };
        let reg = VarRegistry::new(self.registry.names()[..li].iter().cloned())?;
        let mut out = SparsePoly::zero(&reg);
        for (m, c) in &self.terms {
            let e = m.exps()[li];
            let w = value.pow(e).map_err(|_| Error::ZeroDivision(LAMBDA.into()))?;
            out.add_term(Monomial::new(m.exps()[..li].to_vec()), c * &w);
        }
        Ok(out)
    }

    /// Degree in the non-`lambda` variables of each monomial.
    fn geometry_degree(&self, m: &Monomial) -> i64 {
        let li = self.registry.lambda_index();
        m.exps().iter().enumerate().filter(|(i, _)| Some(*i) != li).map(|(_, &e)| e as i64).sum()
    }

    pub fn depends_on_lambda(&self) -> bool {
        match self.registry.lambda_index() {
            Some(li) => self.terms.keys().any(|m| m.exps()[li] != 0),
            None => false,
        }
    }

    /// Maximum total degree in the non-`lambda` variables; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| self.geometry_degree(m)).max()
    }

    /// True iff every monomial has total (non-`lambda`) degree `degree`.
    /// The zero polynomial is homogeneous of every degree.
    pub fn is_homogeneous(&self, degree: i64) -> bool {
        self.terms.keys().all(|m| self.geometry_degree(m) == degree)
    }

    /// Multiplies each monomial of geometry degree `d` by `lambda^d`, i.e.
    /// substitutes `x -> lambda * x` for every variable.
    pub fn grade_scale(&self) -> Result<SparsePoly> {
        if self.depends_on_lambda() {
            return Err(Error::AlreadyScaled);
        }
        let reg = self.registry.with_lambda();
        let li = reg.lambda_index().expect("lambda present");
        let map = self.registry.embedding(&reg);
        let mut out = SparsePoly::zero(&reg);
        for (m, c) in &self.terms {
            let mut e = m.embed(&map, reg.len()).0.into_vec();
            e[li] = 0;
            e[li] = e.iter().sum();
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Splits by the exponent of `lambda`; each piece is returned without `lambda`.
    pub fn split_by_lambda(&self) -> Result<BTreeMap<i32, SparsePoly>> {
        let Some(li) = self.registry.lambda_index() else {
            let mut m = BTreeMap::new();
            if !self.is_zero() {
                m.insert(0, self.clone());
            }
            return Ok(m);
        };
        let reg = VarRegistry::new(self.registry.names()[..li].iter().cloned())?;
        let mut out: BTreeMap<i32, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exps()[li])
                .or_insert_with(|| SparsePoly::zero(&reg))
                .add_term(Monomial::new(m.exps()[..li].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// JSON schema form: `{"vars": [...], "terms": [{"exp": [...], "coef": "p/q"}]}`,
    /// terms in descending graded-lex order.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.registry.names().to_vec(),
            terms: self.terms.iter().rev().map(|(m, c)| TermJson { exp: m.exps().to_vec(), coef: c.clone() }).collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let reg = VarRegistry::new(json.vars.iter().cloned())?;
        SparsePoly::from_terms(&reg, json.terms.iter().map(|t| (t.exp.clone(), t.coef.clone())))
    }
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        if self.registry == other.registry {
            return self.terms == other.terms;
        }
        let (_, a, b) = SparsePoly::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for SparsePoly {}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coef: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl fmt::Display for SparsePoly {
    /// Canonical text: descending graded-lex order, e.g. `tau*g1 - g1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    let name = &self.registry.names()[i];
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.registry)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let (_, mut a, b) = SparsePoly::aligned(self, rhs);
        a.add_scaled_assign(&b, &Rational::one());
        a
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let (_, mut a, b) = SparsePoly::aligned(self, rhs);
        a.add_scaled_assign(&b, &-Rational::one());
        a
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let (reg, a, b) = SparsePoly::aligned(self, rhs);
        let mut out = SparsePoly::zero(&reg);
        out.add_product_assign(&a, &b);
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}
