//! Splitting of the reduced coproducts by dependent and independent
//! restrictions, the three dendriform coalgebra identities as executable
//! comparisons, and the codendriform compatibility gap.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Monomial, TensorElement};
use crate::canonical::{canonical_key, IsoKey};
use crate::error::{Error, Result};
use crate::hopf::{check_size, coproduct, CoproductMode};
use crate::matroid::Matroid;

/// `Δ_≺` sums over dependent `A`, `Δ_≻` over independent `A`, both restricted
/// to `∅ ≠ A ≠ E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPair {
    pub prec: TensorElement,
    pub succ: TensorElement,
}

/// `Δ(M) - M ⊗ 1 - 1 ⊗ M`.
pub fn reduced_coproduct(mode: CoproductMode, m: &Matroid) -> Result<TensorElement> {
    if m.n() == 0 {
        return Err(Error::EmptyMatroid);
    }
    let full = coproduct(mode, m)?;
    let class = Monomial::from_matroid(m)?;
    let mut boundary = TensorElement::zero(2);
    boundary.add_term(vec![class.clone(), Monomial::unit()], BigInt::one());
    boundary.add_term(vec![Monomial::unit(), class], BigInt::one());
    Ok(&full - &boundary)
}

pub fn split(mode: CoproductMode, m: &Matroid) -> Result<SplitPair> {
    if m.n() == 0 {
        return Err(Error::EmptyMatroid);
    }
    check_size(m)?;
    let ground = m.ground();
    let mut prec = TensorElement::zero(2);
    let mut succ = TensorElement::zero(2);
    for subset in ground.subsets() {
        if subset.is_empty() || subset == ground {
            continue;
        }
        let legs = vec![
            Monomial::from_matroid(&m.restriction(subset))?,
            Monomial::from_matroid(&mode.complement_minor(m, subset))?,
        ];
        let target = if m.is_independent(subset) { &mut succ } else { &mut prec };
        target.add_term(legs, BigInt::one());
    }
    Ok(SplitPair { prec, succ })
}

type SplitCache = RwLock<HashMap<(CoproductMode, IsoKey), SplitPair>>;

fn split_cache() -> &'static SplitCache {
    static CACHE: OnceLock<SplitCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub fn split_of_class(mode: CoproductMode, key: &IsoKey) -> Result<SplitPair> {
    let lookup = (mode, key.clone());
    if let Some(hit) = split_cache().read().expect("split cache poisoned").get(&lookup) {
        return Ok(hit.clone());
    }
    let value = split(mode, &key.representative())?;
    split_cache()
        .write()
        .expect("split cache poisoned")
        .insert(lookup, value.clone());
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Half {
    Prec,
    Succ,
    Both,
}

/// One of `Δ_≺`, `Δ_≻` or their sum applied to a leg. Legs are elements of
/// the augmentation ideal; a formal product is read as its direct sum.
fn half_on(mode: CoproductMode, half: Half, leg: &Monomial) -> Result<TensorElement> {
    let key = match leg.flatten()?.single() {
        Some(key) => key.clone(),
        None => return Err(Error::EmptyMatroid),
    };
    let pair = split_of_class(mode, &key)?;
    Ok(match half {
        Half::Prec => pair.prec,
        Half::Succ => pair.succ,
        Half::Both => &pair.prec + &pair.succ,
    })
}

/// Left- and right-hand sides of one dendriform identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySides {
    pub lhs: TensorElement,
    pub rhs: TensorElement,
}

impl IdentitySides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of
/// 1. `(Δ_≺ ⊗ Id) Δ_≺ = (Id ⊗ Δ_≺ + Id ⊗ Δ_≻) Δ_≺`,
/// 2. `(Δ_≻ ⊗ Id) Δ_≺ = (Id ⊗ Δ_≺) Δ_≻`,
/// 3. `(Δ_≺ ⊗ Id + Δ_≻ ⊗ Id) Δ_≻ = (Id ⊗ Δ_≻) Δ_≻`.
pub fn dendriform_sides(mode: CoproductMode, m: &Matroid) -> Result<[IdentitySides; 3]> {
    let pair = split(mode, m)?;
    let apply = |t: &TensorElement, leg: usize, half: Half| {
        t.expand_leg(leg, 2, |mono| half_on(mode, half, mono))
    };
    Ok([
        IdentitySides {
            lhs: apply(&pair.prec, 0, Half::Prec)?,
            rhs: apply(&pair.prec, 1, Half::Both)?,
        },
        IdentitySides {
            lhs: apply(&pair.prec, 0, Half::Succ)?,
            rhs: apply(&pair.succ, 1, Half::Prec)?,
        },
        IdentitySides {
            lhs: apply(&pair.succ, 0, Half::Both)?,
            rhs: apply(&pair.succ, 1, Half::Succ)?,
        },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DendriformReport {
    pub first: bool,
    pub second: bool,
    pub third: bool,
}

impl DendriformReport {
    pub fn all(&self) -> bool {
        self.first && self.second && self.third
    }
}

pub fn check_dendriform_axioms(mode: CoproductMode, m: &Matroid) -> Result<DendriformReport> {
    let [a, b, c] = dendriform_sides(mode, m)?;
    Ok(DendriformReport {
        first: a.holds(),
        second: b.holds(),
        third: c.holds(),
    })
}

/// `Δ_≻(MN)` in the restriction-deletion structure, next to the two candidate
/// expansions in terms of the splittings of `M` and `N`. Products are
/// evaluated as direct sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodendriformSides {
    pub lhs: TensorElement,
    /// `M'N'_≻ ⊗ M''N''_≻ + M'_≻ ⊗ M''_≻N + MN'_≻ ⊗ N''_≻ + N'_≻ ⊗ MN''_≻ + M ⊗ N`.
    pub compatibility_rhs: TensorElement,
    /// `N'_≻ ⊗ MN''_≻ + M'_≻ ⊗ M''_≻N + M'_≻N'_≻ ⊗ M''_≻N''_≻`.
    pub three_term_rhs: TensorElement,
}

impl CodendriformSides {
    pub fn gap(&self) -> TensorElement {
        &self.lhs - &self.compatibility_rhs
    }
}

pub fn codendriform_sides(m: &Matroid, n: &Matroid) -> Result<CodendriformSides> {
    if m.n() == 0 || n.n() == 0 {
        return Err(Error::EmptyMatroid);
    }
    let mode = CoproductMode::RestrictionDeletion;
    let sum = m.direct_sum(n);
    check_size(&sum)?;
    let lhs = split(mode, &sum)?.succ;
    let m_succ = split(mode, m)?.succ;
    let n_succ = split(mode, n)?.succ;
    let m_class = Monomial::from_key(canonical_key(m)?);
    let n_class = Monomial::from_key(canonical_key(n)?);

    let both = m_succ.leg_product(&n_succ)?;
    let mut m_then_n = TensorElement::zero(2);
    for (legs, c) in m_succ.terms() {
        m_then_n.add_term(vec![legs[0].clone(), legs[1].product(&n_class)], c.clone());
    }
    let mut m_left = TensorElement::zero(2);
    let mut m_right = TensorElement::zero(2);
    for (legs, c) in n_succ.terms() {
        m_left.add_term(vec![m_class.product(&legs[0]), legs[1].clone()], c.clone());
        m_right.add_term(vec![legs[0].clone(), m_class.product(&legs[1])], c.clone());
    }
    let mut m_tensor_n = TensorElement::zero(2);
    m_tensor_n.add_term(vec![m_class, n_class], BigInt::one());

    let compatibility_rhs = &(&(&(&both + &m_then_n) + &m_left) + &m_right) + &m_tensor_n;
    let three_term_rhs = &(&m_right + &m_then_n) + &both;
    Ok(CodendriformSides {
        lhs,
        compatibility_rhs: compatibility_rhs.flatten()?,
        three_term_rhs: three_term_rhs.flatten()?,
    })
}

/// `Δ_≻(MN)` minus the codendriform compatibility expansion; nonzero means
/// the compatibility fails for this pair.
pub fn codendriform_gap(m: &Matroid, n: &Matroid) -> Result<TensorElement> {
    Ok(codendriform_sides(m, n)?.gap())
}

#[cfg(test)]
mod tests {
    use super::*;

    const RD: CoproductMode = CoproductMode::RestrictionDeletion;
    const RC: CoproductMode = CoproductMode::RestrictionContraction;

    fn u(r: i64, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    type Leg<'a> = &'a [(i64, usize)];

    fn mono(keys: &[(i64, usize)]) -> Monomial {
        Monomial::from_keys(keys.iter().map(|&(r, n)| canonical_key(&u(r, n)).unwrap()))
    }

    fn tensor(terms: &[(i64, &[Leg])]) -> TensorElement {
        let arity = terms.first().map_or(2, |t| t.1.len());
        let mut t = TensorElement::zero(arity);
        for (c, legs) in terms {
            t.add_term(legs.iter().map(|l| mono(l)).collect(), (*c).into());
        }
        t
    }

    #[test]
    fn reduced_coproduct_examples() {
        assert!(reduced_coproduct(RD, &u(1, 1)).unwrap().is_zero());
        assert_eq!(
            reduced_coproduct(RD, &u(1, 2)).unwrap(),
            tensor(&[(2, &[&[(1, 1)], &[(1, 1)]])])
        );
        assert_eq!(
            reduced_coproduct(RC, &u(1, 2)).unwrap(),
            tensor(&[(2, &[&[(1, 1)], &[(0, 1)]])])
        );
        assert_eq!(reduced_coproduct(RD, &Matroid::empty()), Err(Error::EmptyMatroid));
    }

    #[test]
    fn split_examples() {
        let p = split(RD, &u(1, 2)).unwrap();
        assert!(p.prec.is_zero());
        assert_eq!(p.succ, tensor(&[(2, &[&[(1, 1)], &[(1, 1)]])]));

        let p = split(RD, &u(1, 3)).unwrap();
        assert_eq!(p.prec, tensor(&[(3, &[&[(1, 2)], &[(1, 1)]])]));
        assert_eq!(p.succ, tensor(&[(3, &[&[(1, 1)], &[(1, 2)]])]));

        let p = split(RD, &u(1, 1)).unwrap();
        assert!(p.prec.is_zero() && p.succ.is_zero());
        assert_eq!(split(RC, &Matroid::empty()), Err(Error::EmptyMatroid));
    }

    #[test]
    fn identities_on_a_single_element() {
        for mode in CoproductMode::ALL {
            let report = check_dendriform_axioms(mode, &u(1, 1)).unwrap();
            assert!(report.all());
        }
    }

    // Hand expansion for U_{2,4} under restriction-deletion:
    //   Δ_≺ = 4 U_{2,3}⊗U_{1,1}, Δ_≻ = 4 U_{1,1}⊗U_{2,3} + 6 U_{2,2}⊗U_{2,2},
    //   Δ_≺(U_{2,3}) = Δ_≺(U_{2,2}) = 0, Δ_≻(U_{2,3}) = 3 U_{1,1}⊗U_{2,2} + 3 U_{2,2}⊗U_{1,1}.
    // The second identity has lhs 12 U_{1,1}⊗U_{2,2}⊗U_{1,1} + 12 U_{2,2}⊗U_{1,1}⊗U_{1,1}
    // and rhs 0.
    #[test]
    fn reports_on_u24() {
        let rd = check_dendriform_axioms(RD, &u(2, 4)).unwrap();
        assert_eq!((rd.first, rd.second, rd.third), (true, false, false));
        assert!(check_dendriform_axioms(RC, &u(2, 4)).unwrap().all());
    }

    #[test]
    fn second_identity_on_u24_by_hand() {
        let [first, second, _] = dendriform_sides(RD, &u(2, 4)).unwrap();
        assert!(first.holds());
        assert!(first.lhs.is_zero());
        let expected = tensor(&[
            (12, &[&[(1, 1)], &[(2, 2)], &[(1, 1)]]),
            (12, &[&[(2, 2)], &[(1, 1)], &[(1, 1)]]),
        ]);
        assert_eq!(second.lhs, expected);
        assert!(second.rhs.is_zero());
    }

    // U_{1,3}: Δ_≻ = 3 U_{1,1}⊗U_{1,2} and Δ_≻(U_{1,2}) = 2 U_{1,1}⊗U_{1,1}, so the
    // right side of the third identity is 6 U_{1,1}^{⊗3} while its left side
    // vanishes because Δ(U_{1,1}) has no reduced part.
    #[test]
    fn third_identity_on_u13_by_hand() {
        let [_, _, third] = dendriform_sides(RD, &u(1, 3)).unwrap();
        assert!(third.lhs.is_zero());
        assert_eq!(third.rhs, tensor(&[(6, &[&[(1, 1)], &[(1, 1)], &[(1, 1)]])]));
    }

    #[test]
    fn codendriform_gap_examples() {
        let gap = codendriform_gap(&u(1, 1), &u(1, 1)).unwrap();
        assert_eq!(gap, tensor(&[(1, &[&[(1, 1)], &[(1, 1)]])]));
        let gap = codendriform_gap(&u(0, 1), &u(0, 1)).unwrap();
        assert_eq!(gap, tensor(&[(-1, &[&[(0, 1)], &[(0, 1)]])]));
        assert_eq!(codendriform_gap(&Matroid::empty(), &u(1, 1)), Err(Error::EmptyMatroid));
    }

    #[test]
    fn three_term_expansion_misses_boundary_terms() {
        let sides = codendriform_sides(&u(1, 1), &u(1, 1)).unwrap();
        assert!(sides.three_term_rhs.is_zero());
        assert!(!sides.lhs.is_zero());
    }
}
