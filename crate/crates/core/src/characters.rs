//! Linear functionals on the restriction-deletion Hopf algebra with values in
//! `Q[x, y, s]`: infinitesimal characters, convolution, the convolution
//! exponential, and the matroid polynomial `P_M` they produce.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::Monomial;
use crate::canonical::{canonical_key, IsoKey};
use crate::error::{Error, Result};
use crate::hopf::{check_size, coproduct_monomial, CoproductMode};
use crate::matroid::{Matroid, SubsetMask};
use crate::poly::{Polynomial, Substitution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalKind {
    /// No structural shortcut; evaluated through the coproduct everywhere.
    Generic,
    /// `f(1) = 1` and `f(ab) = f(a) f(b)`.
    Character,
    /// `f(1) = 0` and `f` vanishes on products of two or more classes.
    Infinitesimal,
}

#[derive(Debug)]
enum Node {
    /// `u ∘ ε`.
    Counit,
    /// Values on single classes; zero elsewhere.
    OnClasses(HashMap<IsoKey, Polynomial>),
    Convolution(LinearFunctional, LinearFunctional),
    /// `Σ_k f^{*k} / k!`; `powers[k]` caches `f^{*k}`.
    Exp {
        base: LinearFunctional,
        powers: Mutex<Vec<LinearFunctional>>,
    },
    Combination(Vec<(Polynomial, LinearFunctional)>),
}

#[derive(Debug)]
struct Inner {
    kind: FunctionalKind,
    node: Node,
    memo: RwLock<HashMap<Monomial, Polynomial>>,
}

/// A linear map from the algebra to polynomials, cheap to clone.
#[derive(Debug, Clone)]
pub struct LinearFunctional(Arc<Inner>);

impl LinearFunctional {
    fn new(kind: FunctionalKind, node: Node) -> Self {
        LinearFunctional(Arc::new(Inner {
            kind,
            node,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    /// The convolution unit `u ∘ ε`.
    pub fn counit() -> Self {
        LinearFunctional::new(FunctionalKind::Character, Node::Counit)
    }

    /// The infinitesimal character taking the given values on single classes.
    pub fn infinitesimal(values: HashMap<IsoKey, Polynomial>) -> Self {
        let values = values.into_iter().filter(|(k, v)| !v.is_zero() && !k.is_empty_class()).collect();
        LinearFunctional::new(FunctionalKind::Infinitesimal, Node::OnClasses(values))
    }

    /// `coloop · δ_coloop + loop · δ_loop`.
    pub fn loop_coloop(coloop: Polynomial, loop_weight: Polynomial) -> Self {
        let mut values = HashMap::new();
        values.insert(free_class(), coloop);
        values.insert(loop_class(), loop_weight);
        LinearFunctional::infinitesimal(values)
    }

    /// `δ_loop`: 1 on `U_{0,1}`, 0 elsewhere.
    pub fn delta_loop() -> Self {
        LinearFunctional::loop_coloop(Polynomial::zero(), Polynomial::one())
    }

    /// `δ_coloop`: 1 on `U_{1,1}`, 0 elsewhere.
    pub fn delta_coloop() -> Self {
        LinearFunctional::loop_coloop(Polynomial::one(), Polynomial::zero())
    }

    pub fn kind(&self) -> FunctionalKind {
        self.0.kind
    }

    /// `Σ c_i f_i`. Infinitesimal when every `f_i` is.
    pub fn combination(parts: Vec<(Polynomial, LinearFunctional)>) -> Self {
        let kind = if parts.iter().all(|(_, f)| f.kind() == FunctionalKind::Infinitesimal) {
            FunctionalKind::Infinitesimal
        } else {
            FunctionalKind::Generic
        };
        LinearFunctional::new(kind, Node::Combination(parts))
    }

    pub fn scaled(&self, factor: Polynomial) -> Self {
        LinearFunctional::combination(vec![(factor, self.clone())])
    }

    /// Convolution with respect to the restriction-deletion coproduct:
    /// `(f ∗ g)(m) = Σ f(m') g(m'')`. The product of two characters of a
    /// commutative, cocommutative Hopf algebra is a character.
    pub fn convolve(&self, other: &LinearFunctional) -> Self {
        let kind = if self.kind() == FunctionalKind::Character && other.kind() == FunctionalKind::Character {
            FunctionalKind::Character
        } else {
            FunctionalKind::Generic
        };
        LinearFunctional::new(kind, Node::Convolution(self.clone(), other.clone()))
    }

    /// Left-to-right convolution of several functionals.
    pub fn convolve_all(parts: &[LinearFunctional]) -> Self {
        parts
            .iter()
            .skip(1)
            .fold(parts.first().cloned().unwrap_or_else(LinearFunctional::counit), |acc, f| {
                acc.convolve(f)
            })
    }

    /// The convolution exponential. On a monomial of degree `d` only the
    /// powers up to `d` contribute, because `f^{*k}` vanishes below degree
    /// `k` when `f(1) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.eval(&Monomial::unit())?.is_zero() {
            return Err(Error::NotInfinitesimal);
        }
        let kind = if self.kind() == FunctionalKind::Infinitesimal {
            FunctionalKind::Character
        } else {
            FunctionalKind::Generic
        };
        Ok(LinearFunctional::new(
            kind,
            Node::Exp {
                base: self.clone(),
                powers: Mutex::new(vec![LinearFunctional::counit()]),
            },
        ))
    }

    pub fn eval_matroid(&self, m: &Matroid) -> Result<Polynomial> {
        check_size(m)?;
        self.eval(&Monomial::from_matroid(m)?)
    }

    pub fn eval(&self, m: &Monomial) -> Result<Polynomial> {
        if let Some(hit) = self.0.memo.read().expect("functional memo poisoned").get(m) {
            return Ok(hit.clone());
        }
        let value = match self.kind() {
            FunctionalKind::Character if m.factors().len() != 1 => {
                m.factors().iter().try_fold(Polynomial::one(), |acc, key| {
                    Ok::<_, Error>(&acc * &self.eval(&Monomial::from_key(key.clone()))?)
                })?
            }
            FunctionalKind::Infinitesimal if m.factors().len() != 1 => Polynomial::zero(),
            _ => self.eval_node(m)?,
        };
        self.0
            .memo
            .write()
            .expect("functional memo poisoned")
            .insert(m.clone(), value.clone());
        Ok(value)
    }

    fn eval_node(&self, m: &Monomial) -> Result<Polynomial> {
        match &self.0.node {
            Node::Counit => Ok(if m.is_unit() {
                Polynomial::one()
            } else {
                Polynomial::zero()
            }),
            Node::OnClasses(values) => Ok(m
                .single()
                .and_then(|key| values.get(key))
                .cloned()
                .unwrap_or_else(Polynomial::zero)),
            Node::Convolution(f, g) => {
                let delta = coproduct_monomial(CoproductMode::RestrictionDeletion, m)?;
                let mut total = Polynomial::zero();
                for (legs, c) in delta.terms() {
                    let left = f.eval(&legs[0])?;
                    if left.is_zero() {
                        continue;
                    }
                    let right = g.eval(&legs[1])?;
                    total = &total + &(&(&left * &right) * &Polynomial::from(c.clone()));
                }
                Ok(total)
            }
            Node::Exp { base, powers } => {
                let degree = m.degree();
                let mut total = Polynomial::zero();
                let mut factorial = BigInt::from(1);
                for k in 0..=degree {
                    if k > 0 {
                        factorial *= k;
                    }
                    let power = {
                        let mut cached = powers.lock().expect("exp power cache poisoned");
                        while cached.len() <= k {
                            let next = cached[cached.len() - 1].convolve(base);
                            cached.push(next);
                        }
                        cached[k].clone()
                    };
                    let value = power.eval(m)?;
                    total = &total + &value.scale(&BigRational::new(1.into(), factorial.clone()));
                }
                Ok(total)
            }
            Node::Combination(parts) => parts.iter().try_fold(Polynomial::zero(), |acc, (c, f)| {
                Ok(&acc + &(c * &f.eval(m)?))
            }),
        }
    }
}

fn free_class() -> IsoKey {
    canonical_key(&Matroid::uniform(1, 1).expect("U_{1,1}")).expect("U_{1,1} key")
}

fn loop_class() -> IsoKey {
    canonical_key(&Matroid::uniform(0, 1).expect("U_{0,1}")).expect("U_{0,1} key")
}

fn int(v: i64) -> Polynomial {
    Polynomial::integer(v)
}

/// `exp_*(a δ_coloop + b δ_loop)`.
pub fn exp_loop_coloop(coloop: Polynomial, loop_weight: Polynomial) -> Result<LinearFunctional> {
    LinearFunctional::loop_coloop(coloop, loop_weight).exp()
}

fn alpha_functional() -> &'static LinearFunctional {
    static ALPHA: OnceLock<LinearFunctional> = OnceLock::new();
    ALPHA.get_or_init(|| {
        let (x, y, s) = (Polynomial::x(), Polynomial::y(), Polynomial::s());
        let first = exp_loop_coloop(s.clone(), &s * &(&y - &int(1))).expect("infinitesimal");
        let second = exp_loop_coloop(&s * &(&x - &int(1)), s).expect("infinitesimal");
        first.convolve(&second)
    })
}

fn four_factor_functional() -> &'static LinearFunctional {
    static ALPHA4: OnceLock<LinearFunctional> = OnceLock::new();
    ALPHA4.get_or_init(|| {
        let (x, y, s) = (Polynomial::x(), Polynomial::y(), Polynomial::s());
        let neg_s = -&s;
        let factors = [
            (s.clone(), &s * &(&y - &int(1))),
            (neg_s.clone(), s.clone()),
            (s.clone(), neg_s),
            (&s * &(&x - &int(1)), s),
        ]
        .into_iter()
        .map(|(a, b)| exp_loop_coloop(a, b).expect("infinitesimal"))
        .collect::<Vec<_>>();
        LinearFunctional::convolve_all(&factors)
    })
}

/// `exp_*(s(δ_coloop + (y-1)δ_loop)) ∗ exp_*(s((x-1)δ_coloop + δ_loop))` at `[M]`.
pub fn alpha(m: &Matroid) -> Result<Polynomial> {
    alpha_functional().eval_matroid(m)
}

/// The same character written as a convolution of four exponentials whose
/// middle pair cancels.
pub fn alpha_four_factor(m: &Matroid) -> Result<Polynomial> {
    four_factor_functional().eval_matroid(m)
}

/// `P_M(x, y) = Σ_A (x-1)^{c(E)-c(A)} (y-1)^{l(A)}` by direct subset sum.
pub fn poly_p(m: &Matroid) -> Polynomial {
    let x1 = &Polynomial::x() - &int(1);
    let y1 = &Polynomial::y() - &int(1);
    let (c_total, _) = m.element_counts(m.ground());
    let mut counts: HashMap<(usize, usize), i64> = HashMap::new();
    for subset in m.ground().subsets() {
        let (c, l) = m.element_counts(subset);
        *counts.entry((c_total - c, l)).or_default() += 1;
    }
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    keys.into_iter().fold(Polynomial::zero(), |acc, ((dc, l), mult)| {
        &acc + &(&(&x1.pow(dc as u32) * &y1.pow(l as u32)) * &int(mult))
    })
}

/// `x^{c(E)} y^{l(E)}`.
pub fn poly_p_closed_form(m: &Matroid) -> Polynomial {
    let (c, l) = m.element_counts(m.ground());
    &Polynomial::x().pow(c as u32) * &Polynomial::y().pow(l as u32)
}

/// `Σ_A P_{M|A}(0, y) P_{M\A}(x, 0)`.
pub fn poly_p_convolution_rhs(m: &Matroid) -> Polynomial {
    let at_x0 = Substitution::x(0);
    let at_y0 = Substitution::y(0);
    m.ground().subsets().fold(Polynomial::zero(), |acc, subset| {
        let left = poly_p(&m.restriction(subset)).eval(&at_x0);
        if left.is_zero() {
            return acc;
        }
        let right = poly_p(&m.deletion(subset)).eval(&at_y0);
        &acc + &(&left * &right)
    })
}

/// Checks `P_M = y P_{M\e}` for a loop `e` and `P_M = x P_{M\e}` otherwise.
pub fn poly_p_recursion_check(m: &Matroid, element: usize) -> Result<bool> {
    if element >= m.n() {
        return Err(Error::BadElement { element, n: m.n() });
    }
    let factor = if m.is_loop(element) {
        Polynomial::y()
    } else {
        Polynomial::x()
    };
    let deleted = poly_p(&m.deletion(SubsetMask::singleton(element)));
    Ok(poly_p(m) == &factor * &deleted)
}

/// `P_{M/e} + P_{M\e}`, the deletion-contraction sum `P_M` is compared with.
pub fn deletion_contraction_sum(m: &Matroid, element: usize) -> Result<Polynomial> {
    if element >= m.n() {
        return Err(Error::BadElement { element, n: m.n() });
    }
    let e = SubsetMask::singleton(element);
    Ok(&poly_p(&m.contraction(e)) + &poly_p(&m.deletion(e)))
}
