use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;

use super::scalar::GaussRational;
use super::ExactError;

/// Exponent vector over an ordered variable context, ordered graded-lex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over Gaussian rationals.
///
/// Variables are kept sorted by name; zero coefficients are never stored.
/// Contexts unify by name, so polynomials built over different variable
/// sets combine transparently.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl PartialEq for MultiPoly {
    /// Semantic equality: contexts are unified by name before comparing.
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.unified(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::with_var_names(vars.iter().map(|s| s.to_string()))
    }

    fn with_var_names(names: impl IntoIterator<Item = String>) -> Self {
        let set: BTreeSet<String> = names.into_iter().collect();
        MultiPoly { vars: set.into_iter().collect(), terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut p = MultiPoly { vars: Vec::new(), terms: BTreeMap::new() };
        if !c.is_zero() {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), GaussRational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Single term `c * prod vars[i]^exps[i]` over the given context.
    pub fn monomial(vars: &[&str], exps: &[u32], c: GaussRational) -> Self {
        assert_eq!(vars.len(), exps.len());
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut sorted: Vec<(String, u32)> =
            names.into_iter().zip(exps.iter().copied()).collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let vars: Vec<String> = sorted.iter().map(|(n, _)| n.clone()).collect();
        assert!(vars.windows(2).all(|w| w[0] != w[1]), "duplicate variable");
        let mono = Monomial(sorted.iter().map(|(_, e)| *e).collect());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_value(&self) -> GaussRational {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(GaussRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let idx = self.vars.iter().position(|v| v == var)?;
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Re-embed into a context extended by the union of variable names.
    pub fn promoted(&self, names: &BTreeSet<String>) -> MultiPoly {
        let union: BTreeSet<String> =
            names.iter().cloned().chain(self.vars.iter().cloned()).collect();
        let vars: Vec<String> = union.into_iter().collect();
        if vars == self.vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|u| u == v).unwrap())
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; vars.len()];
            for (old, &new) in map.iter().enumerate() {
                exps[new] = m.0[old];
            }
            terms.insert(Monomial(exps), c.clone());
        }
        MultiPoly { vars, terms }
    }

    fn unified(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            (self.clone(), other.clone())
        } else {
            let names: BTreeSet<String> =
                self.vars.iter().chain(other.vars.iter()).cloned().collect();
            (self.promoted(&names), other.promoted(&names))
        }
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, GaussRational>, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.unified(other);
        for (m, c) in b.terms {
            Self::insert_term(&mut a.terms, m, c);
        }
        a
    }

    pub fn neg(&self) -> MultiPoly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &GaussRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v = &*v * c;
        }
        p
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let (a, b) = self.unified(other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<u32> =
                    ma.0.iter().zip(mb.0.iter()).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, Monomial(exps), ca * cb);
            }
        }
        MultiPoly { vars: a.vars, terms }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(GaussRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative.
    pub fn diff(&self, var: &str) -> Result<MultiPoly, ExactError> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| ExactError::UnknownVariable(var.to_string()))?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] = e - 1;
            let scaled = c * &GaussRational::from_int(e as i64);
            Self::insert_term(&mut terms, Monomial(exps), scaled);
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    pub fn eval_exact(
        &self,
        point: &BTreeMap<String, GaussRational>,
    ) -> Result<GaussRational, ExactError> {
        for v in &self.vars {
            if self.degree_in(v).unwrap_or(0) > 0 && !point.contains_key(v) {
                return Err(ExactError::UnboundVariable(v.clone()));
            }
        }
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(&self.vars[i]).unwrap();
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval_complex(
        &self,
        point: &BTreeMap<String, Complex64>,
    ) -> Result<Complex64, ExactError> {
        for v in &self.vars {
            if self.degree_in(v).unwrap_or(0) > 0 && !point.contains_key(v) {
                return Err(ExactError::UnboundVariable(v.clone()));
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point.get(&self.vars[i]).unwrap().powu(e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Coefficient of `var^k`, as a polynomial in the same context with the
    /// exponent of `var` zeroed out.
    pub fn coeff_of_power(&self, var: &str, k: u32) -> MultiPoly {
        let idx = match self.vars.iter().position(|v| v == var) {
            Some(i) => i,
            None => {
                return if k == 0 {
                    self.clone()
                } else {
                    MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
                }
            }
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[idx] == k {
                let mut exps = m.0.clone();
                exps[idx] = 0;
                terms.insert(Monomial(exps), c.clone());
            }
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }

    fn leading(&self) -> Option<(&Monomial, &GaussRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (the quotient is not a polynomial).
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (mut rem, d) = self.unified(divisor);
        let vars = rem.vars.clone();
        let mut quo = MultiPoly { vars: vars.clone(), terms: BTreeMap::new() };
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let mut q_exps = Vec::with_capacity(rm.0.len());
            for (a, b) in rm.0.iter().zip(dm.0.iter()) {
                if a < b {
                    return None;
                }
                q_exps.push(a - b);
            }
            let qc = rc / dc.clone();
            let mut qterm_terms = BTreeMap::new();
            qterm_terms.insert(Monomial(q_exps), qc);
            let qterm = MultiPoly { vars: vars.clone(), terms: qterm_terms };
            rem = rem.sub(&qterm.mul(&d));
            quo = quo.add(&qterm);
        }
        Some(quo)
    }

    /// Terms in descending graded-lex order, exposed for serialization.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter().rev()
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: terms in descending graded-lex order joined by
    /// ` + `; coefficients rendered per [`GaussRational`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms_desc() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            let coeff = c.to_string();
            let needs_parens = coeff.contains('+') || coeff[1..].contains('-');
            let s = if factors.is_empty() {
                coeff
            } else if c.is_one() {
                factors.join("*")
            } else if (-c.clone()).is_one() {
                format!("-{}", factors.join("*"))
            } else if needs_parens {
                format!("({})*{}", coeff, factors.join("*"))
            } else {
                format!("{}*{}", coeff, factors.join("*"))
            };
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> MultiPoly {
        MultiPoly::var("z")
    }
    fn u() -> MultiPoly {
        MultiPoly::var("u")
    }

    #[test]
    fn ring_identities() {
        // (z+u) + (z-u) = 2z
        let s = z().add(&u()).add(&z().sub(&u()));
        assert_eq!(s, z().scale(&GaussRational::from_int(2)));
        // (z+u)(z-u) = z^2 - u^2
        let p = z().add(&u()).mul(&z().sub(&u()));
        assert_eq!(p, z().pow(2).sub(&u().pow(2)));
    }

    #[test]
    fn scale_by_complex() {
        let c = GaussRational::from_ratio_pair((1, 2), (1, 2));
        let p = z().pow(2).scale(&c);
        assert_eq!(p.to_string(), "(1/2+1/2*i)*z^2");
    }

    #[test]
    fn derivative() {
        // d/dz (z^2 u) = 2 z u
        let p = z().pow(2).mul(&u());
        let d = p.diff("z").unwrap();
        let expect = z().mul(&u()).scale(&GaussRational::from_int(2));
        assert_eq!(d, expect);
        // d/du (z^2) = 0 requires u in context
        let q = z().pow(2).add(&u().sub(&u()));
        assert!(q.diff("u").unwrap().is_zero());
        // d/dz (z u + u^2) = u
        let r = z().mul(&u()).add(&u().pow(2));
        assert_eq!(r.diff("z").unwrap(), u().promoted(&r.vars().iter().cloned().collect()));
        assert!(p.diff("w").is_err());
    }

    #[test]
    fn evaluation() {
        let p = z().pow(2).sub(&z().scale(&GaussRational::from_int(3))).add(&MultiPoly::from_int(2));
        let mut pt = BTreeMap::new();
        pt.insert("z".to_string(), GaussRational::from_int(1));
        assert!(p.eval_exact(&pt).unwrap().is_zero());

        let zu = z().mul(&u());
        let mut pt = BTreeMap::new();
        pt.insert("z".to_string(), GaussRational::from_int(2));
        pt.insert("u".to_string(), GaussRational::from_int(3));
        assert_eq!(zu.eval_exact(&pt).unwrap(), GaussRational::from_int(6));

        let mut cpt = BTreeMap::new();
        cpt.insert("z".to_string(), Complex64::new(0.0, 1.0));
        let v = z().pow(2).eval_complex(&cpt).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);

        let mut missing = BTreeMap::new();
        missing.insert("u".to_string(), GaussRational::from_int(1));
        assert!(zu.eval_exact(&missing).is_err());
    }

    #[test]
    fn exact_division() {
        let p = z().pow(2).sub(&u().pow(2));
        let d = z().sub(&u());
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, z().add(&u()));
        assert!(p.exact_div(&z().add(&MultiPoly::from_int(1))).is_none());
    }

    #[test]
    fn graded_lex_display() {
        // u + z^2 u: the degree-3 term prints first; factors follow context order
        let p = u().add(&z().pow(2).mul(&u()));
        assert_eq!(p.to_string(), "u*z^2 + u");
    }
}
