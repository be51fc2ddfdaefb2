//! Free commutative algebra on matroid isomorphism classes, and its tensor
//! powers, with integer coefficients.
//!
//! A [`Monomial`] is a formal product of classes; the product corresponds to
//! direct sum but is kept unevaluated, so `U_{1,1}.U_{2,2}` and `U_{3,3}` are
//! distinct basis elements. [`Monomial::flatten`] evaluates the product to the
//! class of the direct sum when the two views have to be compared.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::canonical::{canonical_key, IsoKey};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Commutative product of isomorphism classes; the empty product is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<IsoKey>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    /// The single-factor monomial of a class, or the unit for `U_{0,0}`.
    pub fn from_key(key: IsoKey) -> Self {
        if key.is_empty_class() {
            Monomial::unit()
        } else {
            Monomial { factors: vec![key] }
        }
    }

    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        Ok(Monomial::from_key(canonical_key(m)?))
    }

    pub fn from_keys<I: IntoIterator<Item = IsoKey>>(keys: I) -> Self {
        let mut factors: Vec<IsoKey> = keys.into_iter().filter(|k| !k.is_empty_class()).collect();
        factors.sort();
        Monomial { factors }
    }

    pub fn factors(&self) -> &[IsoKey] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// The class when there is exactly one factor.
    pub fn single(&self) -> Option<&IsoKey> {
        match self.factors.as_slice() {
            [key] => Some(key),
            _ => None,
        }
    }

    /// Total ground-set size.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(IsoKey::n).sum()
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        factors.extend(self.factors.iter().cloned());
        factors.extend(other.factors.iter().cloned());
        factors.sort();
        Monomial { factors }
    }

    /// Direct sum of the factors' representatives.
    pub fn to_matroid(&self) -> Matroid {
        self.factors
            .iter()
            .fold(Matroid::empty(), |acc, key| acc.direct_sum(&key.representative()))
    }

    /// Replaces the formal product by the class of the direct sum.
    pub fn flatten(&self) -> Result<Monomial> {
        if self.factors.len() <= 1 {
            return Ok(self.clone());
        }
        Monomial::from_matroid(&self.to_matroid())
    }
}

/// Ordered by degree, then number of factors, then the sorted factor list.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.factors.len().cmp(&other.factors.len()))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.factors.len() {
            let run = self.factors[i..]
                .iter()
                .take_while(|k| **k == self.factors[i])
                .count();
            if !first {
                f.write_str(".")?;
            }
            first = false;
            write!(f, "{}", self.factors[i])?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

fn write_terms<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a BigInt)>,
    render: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut empty = true;
    for (i, (basis, c)) in terms.enumerate() {
        empty = false;
        let body = render(basis);
        if i == 0 {
            if c.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{c}*{body}")?;
            }
        } else {
            let sign = if c.is_negative() { " - " } else { " + " };
            if c.is_one() {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign}{}*{body}", c.abs())?;
            }
        }
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

fn accumulate<K: Ord + Clone>(terms: &mut BTreeMap<K, BigInt>, key: K, coefficient: BigInt) {
    if coefficient.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(slot) => {
            *slot += coefficient;
            if slot.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            terms.insert(key, coefficient);
        }
    }
}

/// Integer linear combination of monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleElement {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement::default()
    }

    pub fn one() -> Self {
        ModuleElement::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        ModuleElement::term(m, BigInt::one())
    }

    pub fn from_key(key: IsoKey) -> Self {
        ModuleElement::from_monomial(Monomial::from_key(key))
    }

    pub fn term(m: Monomial, coefficient: BigInt) -> Self {
        let mut out = ModuleElement::zero();
        out.add_term(m, coefficient);
        out
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: BigInt) {
        accumulate(&mut self.terms, m, coefficient);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scale(&self, factor: &BigInt) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    /// Bilinear extension of the monomial product.
    pub fn product(&self, other: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.product(b), ca * cb);
            }
        }
        out
    }

    pub fn flatten(&self) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.flatten()?, c.clone());
        }
        Ok(out)
    }
}

impl Add for &ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ModuleElement {
    type Output = ModuleElement;
    fn sub(self, rhs: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ModuleElement {
    type Output = ModuleElement;
    fn neg(self) -> ModuleElement {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |m| m.to_string())
    }
}

/// Integer linear combination of tensors `m_1 ⊗ … ⊗ m_k` of fixed arity `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, BigInt>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn unit(arity: usize) -> Self {
        let mut out = TensorElement::zero(arity);
        out.add_term(vec![Monomial::unit(); arity], BigInt::one());
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, legs: Vec<Monomial>, coefficient: BigInt) {
        assert_eq!(legs.len(), self.arity, "tensor leg count must match arity");
        accumulate(&mut self.terms, legs, coefficient);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &BigInt)> {
        self.terms.iter().map(|(legs, c)| (legs.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, legs: &[Monomial]) -> BigInt {
        self.terms.get(legs).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scale(&self, factor: &BigInt) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (legs, c) in &self.terms {
            out.add_term(legs.clone(), c * factor);
        }
        out
    }

    /// Exchanges the two legs of an arity-2 tensor.
    pub fn swap(&self) -> Result<TensorElement> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: self.arity,
            });
        }
        let mut out = TensorElement::zero(2);
        for (legs, c) in &self.terms {
            out.add_term(vec![legs[1].clone(), legs[0].clone()], c.clone());
        }
        Ok(out)
    }

    /// Legwise product `(a_1 ⊗ … ⊗ a_k)(b_1 ⊗ … ⊗ b_k) = a_1 b_1 ⊗ … ⊗ a_k b_k`,
    /// extended bilinearly.
    pub fn leg_product(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        let mut out = TensorElement::zero(self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let legs = a.iter().zip(b).map(|(x, y)| x.product(y)).collect();
                out.add_term(legs, ca * cb);
            }
        }
        Ok(out)
    }

    /// Replaces leg `leg` of every term by the expansion `map` gives for it,
    /// raising the arity by `expansion_arity - 1`.
    pub fn expand_leg<F>(&self, leg: usize, expansion_arity: usize, mut map: F) -> Result<TensorElement>
    where
        F: FnMut(&Monomial) -> Result<TensorElement>,
    {
        let mut out = TensorElement::zero(self.arity - 1 + expansion_arity);
        for (legs, c) in &self.terms {
            let expansion = map(&legs[leg])?;
            if expansion.arity != expansion_arity {
                return Err(Error::ArityMismatch {
                    expected: expansion_arity,
                    found: expansion.arity,
                });
            }
            for (inner, ci) in &expansion.terms {
                let mut new_legs = Vec::with_capacity(out.arity);
                new_legs.extend_from_slice(&legs[..leg]);
                new_legs.extend(inner.iter().cloned());
                new_legs.extend_from_slice(&legs[leg + 1..]);
                out.add_term(new_legs, c * ci);
            }
        }
        Ok(out)
    }

    pub fn flatten(&self) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.arity);
        for (legs, c) in &self.terms {
            let flat = legs.iter().map(Monomial::flatten).collect::<Result<Vec<_>>>()?;
            out.add_term(flat, c.clone());
        }
        Ok(out)
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, rhs.arity, "cannot add tensors of different arity");
        let mut out = self.clone();
        for (legs, c) in &rhs.terms {
            out.add_term(legs.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, rhs.arity, "cannot subtract tensors of different arity");
        let mut out = self.clone();
        for (legs, c) in &rhs.terms {
            out.add_term(legs.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |legs| {
            legs.iter().map(Monomial::to_string).collect::<Vec<_>>().join("⊗")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn key(r: i64, n: usize) -> IsoKey {
        canonical_key(&Matroid::uniform(r, n).unwrap()).unwrap()
    }

    fn mono(keys: &[(i64, usize)]) -> Monomial {
        Monomial::from_keys(keys.iter().map(|&(r, n)| key(r, n)))
    }

    fn el(keys: &[(i64, usize)]) -> ModuleElement {
        ModuleElement::from_monomial(mono(keys))
    }

    #[test]
    fn product_examples() {
        let m = el(&[(2, 4)]);
        assert_eq!(ModuleElement::one().product(&m), m);
        let p = el(&[(1, 1)]).product(&el(&[(2, 2)]));
        assert_eq!(p, el(&[(1, 1), (2, 2)]));
        let a = el(&[(1, 1)]).scale(&2.into());
        let b = el(&[(1, 1)]).scale(&3.into());
        assert_eq!(a.product(&b), el(&[(1, 1), (1, 1)]).scale(&6.into()));
    }

    #[test]
    fn empty_class_is_not_stored() {
        assert!(Monomial::from_key(IsoKey::empty()).is_unit());
        assert_eq!(mono(&[(0, 0), (1, 1)]), mono(&[(1, 1)]));
    }

    #[test]
    fn swap_examples() {
        let mut t = TensorElement::zero(2);
        t.add_term(vec![mono(&[(1, 1)]), mono(&[(0, 1)])], BigInt::one());
        let mut expected = TensorElement::zero(2);
        expected.add_term(vec![mono(&[(0, 1)]), mono(&[(1, 1)])], BigInt::one());
        assert_eq!(t.swap().unwrap(), expected);
        assert_eq!(t.swap().unwrap().swap().unwrap(), t);

        let mut symmetric = TensorElement::zero(2);
        symmetric.add_term(vec![mono(&[(1, 1)]), mono(&[(1, 1)])], 2.into());
        assert_eq!(symmetric.swap().unwrap(), symmetric);

        assert_eq!(
            TensorElement::unit(3).swap(),
            Err(Error::ArityMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn rendering_follows_the_term_order() {
        let s = &(&el(&[(1, 1), (2, 2)]).scale(&6.into()) - &el(&[(3, 3)]))
            - &el(&[(1, 1), (1, 1), (1, 1)]).scale(&6.into());
        assert_eq!(s.to_string(), "-1*U_{3,3} + 6*U_{1,1}.U_{2,2} - 6*U_{1,1}^3");
        let mut t = TensorElement::zero(2);
        t.add_term(vec![mono(&[(1, 2)]), Monomial::unit()], BigInt::one());
        t.add_term(vec![mono(&[(1, 1)]), mono(&[(1, 1)])], 2.into());
        t.add_term(vec![Monomial::unit(), mono(&[(1, 2)])], BigInt::one());
        assert_eq!(t.to_string(), "1⊗U_{1,2} + 2*U_{1,1}⊗U_{1,1} + U_{1,2}⊗1");
        assert_eq!(ModuleElement::zero().to_string(), "0");
    }

    #[test]
    fn flatten_evaluates_direct_sums() {
        assert_eq!(mono(&[(1, 1), (1, 1)]).flatten().unwrap(), mono(&[(2, 2)]));
        assert_eq!(mono(&[(0, 1)]).flatten().unwrap(), mono(&[(0, 1)]));
    }

    #[test]
    fn expand_leg_inserts_in_place() {
        let mut t = TensorElement::zero(2);
        t.add_term(vec![mono(&[(1, 1)]), mono(&[(0, 1)])], 3.into());
        let out = t
            .expand_leg(1, 2, |m| {
                let mut e = TensorElement::zero(2);
                e.add_term(vec![m.clone(), Monomial::unit()], 2.into());
                Ok(e)
            })
            .unwrap();
        assert_eq!(out.arity(), 3);
        assert_eq!(
            out.coefficient(&[mono(&[(1, 1)]), mono(&[(0, 1)]), Monomial::unit()]),
            6.into()
        );
    }

    fn classes() -> Vec<IsoKey> {
        vec![key(0, 1), key(1, 1), key(1, 2), key(2, 2), key(0, 2)]
    }

    fn element() -> impl Strategy<Value = ModuleElement> {
        let pick = prop::collection::vec(0usize..5, 0..3);
        prop::collection::vec((pick, -4i64..5), 0..4).prop_map(|terms| {
            let pool = classes();
            let mut out = ModuleElement::zero();
            for (indices, c) in terms {
                let m = Monomial::from_keys(indices.into_iter().map(|i| pool[i].clone()));
                out.add_term(m, c.into());
            }
            out
        })
    }

    proptest! {
        #[test]
        fn product_is_associative_and_commutative(a in element(), b in element(), c in element()) {
            prop_assert_eq!(a.product(&b), b.product(&a));
            prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
            prop_assert_eq!(a.product(&(&b + &c)), &a.product(&b) + &a.product(&c));
        }

        #[test]
        fn product_adds_degrees(a in element(), b in element()) {
            for (ma, _) in a.terms() {
                for (mb, _) in b.terms() {
                    prop_assert_eq!(ma.product(mb).degree(), ma.degree() + mb.degree());
                }
            }
        }
    }
}
