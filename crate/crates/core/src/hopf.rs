//! Restriction-contraction and restriction-deletion coproducts, the counit
//! and the antipode of the restriction-deletion Hopf algebra.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{ModuleElement, Monomial, TensorElement};
use crate::canonical::{canonical_key, IsoKey, MAX_CANONICAL_N};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, SubsetMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoproductMode {
    /// `Δ(M) = Σ_A M|A ⊗ M/A`.
    RestrictionContraction,
    /// `Δ(M) = Σ_A M|A ⊗ M\A`.
    RestrictionDeletion,
}

impl CoproductMode {
    pub const ALL: [CoproductMode; 2] = [
        CoproductMode::RestrictionContraction,
        CoproductMode::RestrictionDeletion,
    ];

    /// Second tensor leg of the term indexed by `subset`.
    pub fn complement_minor(self, m: &Matroid, subset: SubsetMask) -> Matroid {
        match self {
            CoproductMode::RestrictionContraction => m.contraction(subset),
            CoproductMode::RestrictionDeletion => m.deletion(subset),
        }
    }
}

impl fmt::Display for CoproductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoproductMode::RestrictionContraction => "rc",
            CoproductMode::RestrictionDeletion => "rd",
        })
    }
}

impl FromStr for CoproductMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rc" => Ok(CoproductMode::RestrictionContraction),
            "rd" => Ok(CoproductMode::RestrictionDeletion),
            other => Err(Error::Parse(format!("unknown coproduct mode '{other}' (expected rc or rd)"))),
        }
    }
}

pub(crate) fn check_size(m: &Matroid) -> Result<()> {
    if m.n() > MAX_CANONICAL_N {
        return Err(Error::GroundSetTooLarge {
            n: m.n(),
            limit: MAX_CANONICAL_N,
        });
    }
    Ok(())
}

/// `Δ(M)` as a sum over all subsets, with both legs canonicalized.
pub fn coproduct(mode: CoproductMode, m: &Matroid) -> Result<TensorElement> {
    check_size(m)?;
    let mut out = TensorElement::zero(2);
    for subset in m.ground().subsets() {
        let left = Monomial::from_matroid(&m.restriction(subset))?;
        let right = Monomial::from_matroid(&mode.complement_minor(m, subset))?;
        out.add_term(vec![left, right], BigInt::one());
    }
    Ok(out)
}

type ClassCache = RwLock<HashMap<(CoproductMode, IsoKey), TensorElement>>;

fn class_cache() -> &'static ClassCache {
    static CACHE: OnceLock<ClassCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized coproduct of an isomorphism class.
pub fn coproduct_of_class(mode: CoproductMode, key: &IsoKey) -> Result<TensorElement> {
    let lookup = (mode, key.clone());
    if let Some(hit) = class_cache().read().expect("coproduct cache poisoned").get(&lookup) {
        return Ok(hit.clone());
    }
    let value = coproduct(mode, &key.representative())?;
    class_cache()
        .write()
        .expect("coproduct cache poisoned")
        .insert(lookup, value.clone());
    Ok(value)
}

/// Multiplicative extension: the legwise product of the factors' coproducts.
pub fn coproduct_monomial(mode: CoproductMode, m: &Monomial) -> Result<TensorElement> {
    m.factors().iter().try_fold(TensorElement::unit(2), |acc, key| {
        acc.leg_product(&coproduct_of_class(mode, key)?)
    })
}

pub fn coproduct_element(mode: CoproductMode, e: &ModuleElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero(2);
    for (m, c) in e.terms() {
        out = &out + &coproduct_monomial(mode, m)?.scale(c);
    }
    Ok(out)
}

/// Coefficient of the unit monomial.
pub fn counit(e: &ModuleElement) -> BigInt {
    e.coefficient(&Monomial::unit())
}

pub fn counit_monomial(m: &Monomial) -> BigInt {
    if m.is_unit() {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Applies `ε` to leg `leg` of an arity-2 tensor, keeping the other leg.
pub fn counit_on_leg(t: &TensorElement, leg: usize) -> Result<ModuleElement> {
    if t.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: t.arity(),
        });
    }
    let mut out = ModuleElement::zero();
    for (legs, c) in t.terms() {
        let weight = counit_monomial(&legs[leg]);
        if !weight.is_zero() {
            out.add_term(legs[1 - leg].clone(), c * weight);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(Δ ⊗ Id) ∘ Δ`
    Left,
    /// `(Id ⊗ Δ) ∘ Δ`
    Right,
}

pub fn iterated_coproduct(mode: CoproductMode, m: &Matroid, side: Side) -> Result<TensorElement> {
    let once = coproduct(mode, m)?;
    let leg = match side {
        Side::Left => 0,
        Side::Right => 1,
    };
    once.expand_leg(leg, 2, |mono| coproduct_monomial(mode, mono))
}

type AntipodeCache = RwLock<HashMap<IsoKey, ModuleElement>>;

fn antipode_cache() -> &'static AntipodeCache {
    static CACHE: OnceLock<AntipodeCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Antipode of the restriction-deletion Hopf algebra on a class:
/// `S(M) = -M - Σ_{∅ ≠ A ≠ E} S(M|A) · M\A`, with `S(1) = 1`.
pub fn antipode_rd(key: &IsoKey) -> Result<ModuleElement> {
    if key.is_empty_class() {
        return Ok(ModuleElement::one());
    }
    if let Some(hit) = antipode_cache().read().expect("antipode cache poisoned").get(key) {
        return Ok(hit.clone());
    }
    let n = key.n();
    let delta = coproduct_of_class(CoproductMode::RestrictionDeletion, key)?;
    let mut out = -&ModuleElement::from_key(key.clone());
    for (legs, c) in delta.terms() {
        let d = legs[0].degree();
        if d == 0 || d == n {
            continue;
        }
        // Both legs of a single-class coproduct are single classes.
        let left = antipode_monomial(&legs[0])?;
        let term = left.product(&ModuleElement::from_monomial(legs[1].clone()));
        out = &out - &term.scale(c);
    }
    antipode_cache()
        .write()
        .expect("antipode cache poisoned")
        .insert(key.clone(), out.clone());
    Ok(out)
}

/// The antipode is an algebra map on this commutative algebra.
pub fn antipode_monomial(m: &Monomial) -> Result<ModuleElement> {
    m.factors()
        .iter()
        .try_fold(ModuleElement::one(), |acc, key| Ok(acc.product(&antipode_rd(key)?)))
}

pub fn antipode_element(e: &ModuleElement) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero();
    for (m, c) in e.terms() {
        out = &out + &antipode_monomial(m)?.scale(c);
    }
    Ok(out)
}

/// `m ∘ (S ⊗ Id) ∘ Δ` (leg 0) or `m ∘ (Id ⊗ S) ∘ Δ` (leg 1) applied to `e`.
pub fn antipode_convolution(e: &ModuleElement, antipode_leg: usize) -> Result<ModuleElement> {
    let delta = coproduct_element(CoproductMode::RestrictionDeletion, e)?;
    let mut out = ModuleElement::zero();
    for (legs, c) in delta.terms() {
        let s = antipode_monomial(&legs[antipode_leg])?;
        let other = ModuleElement::from_monomial(legs[1 - antipode_leg].clone());
        out = &out + &s.product(&other).scale(c);
    }
    Ok(out)
}

/// Convenience wrapper canonicalizing `m` first.
pub fn antipode_of_matroid(m: &Matroid) -> Result<ModuleElement> {
    antipode_rd(&canonical_key(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(r: i64, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    type Leg<'a> = &'a [(i64, usize)];

    fn mono(keys: &[(i64, usize)]) -> Monomial {
        Monomial::from_keys(keys.iter().map(|&(r, n)| canonical_key(&u(r, n)).unwrap()))
    }

    fn tensor(terms: &[(i64, Leg, Leg)]) -> TensorElement {
        let mut t = TensorElement::zero(2);
        for &(c, a, b) in terms {
            t.add_term(vec![mono(a), mono(b)], c.into());
        }
        t
    }

    const RD: CoproductMode = CoproductMode::RestrictionDeletion;
    const RC: CoproductMode = CoproductMode::RestrictionContraction;

    #[test]
    fn restriction_deletion_of_u12() {
        let expected = tensor(&[(1, &[], &[(1, 2)]), (2, &[(1, 1)], &[(1, 1)]), (1, &[(1, 2)], &[])]);
        assert_eq!(coproduct(RD, &u(1, 2)).unwrap(), expected);
        assert_eq!(
            coproduct(RD, &u(1, 2)).unwrap().to_string(),
            "1⊗U_{1,2} + 2*U_{1,1}⊗U_{1,1} + U_{1,2}⊗1"
        );
    }

    #[test]
    fn restriction_deletion_of_u24() {
        let expected = tensor(&[
            (1, &[], &[(2, 4)]),
            (4, &[(1, 1)], &[(2, 3)]),
            (6, &[(2, 2)], &[(2, 2)]),
            (4, &[(2, 3)], &[(1, 1)]),
            (1, &[(2, 4)], &[]),
        ]);
        assert_eq!(coproduct(RD, &u(2, 4)).unwrap(), expected);
    }

    #[test]
    fn restriction_contraction_of_u12() {
        let expected = tensor(&[(1, &[], &[(1, 2)]), (2, &[(1, 1)], &[(0, 1)]), (1, &[(1, 2)], &[])]);
        assert_eq!(coproduct(RC, &u(1, 2)).unwrap(), expected);
    }

    #[test]
    fn monomial_coproduct_examples() {
        assert_eq!(coproduct_monomial(RD, &Monomial::unit()).unwrap(), TensorElement::unit(2));
        let product = coproduct_monomial(RD, &mono(&[(1, 2), (1, 3)])).unwrap();
        let direct = coproduct(RD, &u(1, 2).direct_sum(&u(1, 3))).unwrap();
        assert_eq!(product.flatten().unwrap(), direct);
        let squares = coproduct_monomial(RD, &mono(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!(squares.flatten().unwrap(), coproduct(RD, &u(2, 2)).unwrap());
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&ModuleElement::one()), BigInt::one());
        assert_eq!(counit(&ModuleElement::from_monomial(mono(&[(1, 1)]))), BigInt::zero());
        let e = &ModuleElement::one().scale(&3.into()) + &ModuleElement::from_monomial(mono(&[(2, 4)])).scale(&5.into());
        assert_eq!(counit(&e), BigInt::from(3));
    }

    #[test]
    fn iterated_coproduct_of_u11() {
        let left = iterated_coproduct(RD, &u(1, 1), Side::Left).unwrap();
        let right = iterated_coproduct(RD, &u(1, 1), Side::Right).unwrap();
        assert_eq!(left, right);
        let one = Monomial::unit;
        let x = mono(&[(1, 1)]);
        let mut expected = TensorElement::zero(3);
        expected.add_term(vec![one(), one(), x.clone()], BigInt::one());
        expected.add_term(vec![one(), x.clone(), one()], BigInt::one());
        expected.add_term(vec![x, one(), one()], BigInt::one());
        assert_eq!(left, expected);
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode_rd(&IsoKey::empty()).unwrap(), ModuleElement::one());
        let u11 = canonical_key(&u(1, 1)).unwrap();
        assert_eq!(antipode_rd(&u11).unwrap(), -&ModuleElement::from_key(u11.clone()));
        let s = antipode_of_matroid(&u(3, 3)).unwrap();
        assert_eq!(s.to_string(), "-1*U_{3,3} + 6*U_{1,1}.U_{2,2} - 6*U_{1,1}^3");
    }

    #[test]
    fn antipode_law_on_small_uniforms() {
        for (r, n) in [(1, 2), (2, 3), (1, 3), (0, 2), (2, 4)] {
            let e = ModuleElement::from_monomial(mono(&[(r, n)]));
            assert!(antipode_convolution(&e, 0).unwrap().is_zero());
            assert!(antipode_convolution(&e, 1).unwrap().is_zero());
        }
        let unit = ModuleElement::one();
        assert_eq!(antipode_convolution(&unit, 0).unwrap(), unit);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("rd".parse::<CoproductMode>().unwrap(), RD);
        assert_eq!("RC".parse::<CoproductMode>().unwrap(), RC);
        assert!("xy".parse::<CoproductMode>().is_err());
    }

    #[test]
    fn oversized_input_is_rejected() {
        assert!(matches!(coproduct(RD, &u(1, 11)), Err(Error::GroundSetTooLarge { .. })));
    }
}
