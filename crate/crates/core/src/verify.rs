//! Exhaustive identity checks over the small-matroid catalogs, as run by the
//! `verify` command.

use std::path::Path;

use rayon::prelude::*;

use crate::algebra::{ModuleElement, Monomial};
use crate::canonical::canonical_key;
use crate::catalog::{enumerate_up_to, Catalog};
use crate::characters::{
    alpha, alpha_four_factor, deletion_contraction_sum, exp_loop_coloop, poly_p, poly_p_closed_form,
    poly_p_convolution_rhs, poly_p_recursion_check,
};
use crate::dendriform::{codendriform_gap, dendriform_sides, reduced_coproduct, split};
use crate::error::{Error, Result};
use crate::hopf::{
    antipode_convolution, coproduct, coproduct_monomial, counit_on_leg, iterated_coproduct, CoproductMode, Side,
};
use crate::matroid::{Matroid, SubsetMask};
use crate::poly::Polynomial;

const MAX_REPORTED: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub examples: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

struct Tally {
    name: String,
    checked: usize,
    failed: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            checked: 0,
            failed: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < MAX_REPORTED {
                self.examples.push(describe());
            }
        }
    }

    fn check_result(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: {e}", describe())),
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            checked: self.checked,
            failed: self.failed,
            examples: self.examples,
        }
    }
}

/// Matroids of every catalog up to the working size.
pub struct Universe {
    pub catalogs: Vec<Catalog>,
}

impl Universe {
    pub fn load(max_n: usize, cache_dir: Option<&Path>) -> Result<Universe> {
        Ok(Universe {
            catalogs: enumerate_up_to(max_n, cache_dir)?,
        })
    }

    pub fn matroids(&self) -> impl Iterator<Item = &Matroid> {
        self.catalogs.iter().flat_map(|c| c.matroids())
    }

    pub fn nonempty(&self) -> impl Iterator<Item = &Matroid> {
        self.matroids().filter(|m| m.n() > 0)
    }

    /// Ordered pairs of nonempty classes with total size at most `limit`.
    pub fn pairs(&self, limit: usize) -> Vec<(&Matroid, &Matroid)> {
        let mut out = Vec::new();
        for a in self.nonempty() {
            for b in self.nonempty() {
                if a.n() + b.n() <= limit {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn max_n(&self) -> usize {
        self.catalogs.len().saturating_sub(1)
    }
}

type SuiteFn = fn(&Universe) -> Vec<SuiteResult>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("matroid", matroid_axioms),
    ("minors", minor_identities),
    ("coalgebra", coalgebra_laws),
    ("multiplicativity", multiplicativity),
    ("antipode", antipode_law),
    ("dendriform", dendriform),
    ("codendriform", codendriform),
    ("characters", characters),
    ("polynomial", polynomial_identities),
];

/// Names accepted by [`run_groups`].
pub fn group_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(name, _)| *name)
}

/// Runs every suite; results come back in a fixed order regardless of how
/// the work is scheduled.
pub fn run_all(max_n: usize, cache_dir: Option<&Path>) -> Result<Vec<SuiteResult>> {
    run_groups(&[], max_n, cache_dir)
}

/// Runs the named groups, or all of them when `groups` is empty.
pub fn run_groups(groups: &[&str], max_n: usize, cache_dir: Option<&Path>) -> Result<Vec<SuiteResult>> {
    if let Some(unknown) = groups.iter().find(|g| !group_names().any(|n| n == **g)) {
        return Err(Error::Parse(format!("unknown suite group '{unknown}'")));
    }
    let universe = Universe::load(max_n, cache_dir)?;
    Ok(SUITES
        .par_iter()
        .filter(|(name, _)| groups.is_empty() || groups.contains(name))
        .map(|(_, suite)| suite(&universe))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

fn matroid_axioms(u: &Universe) -> Vec<SuiteResult> {
    let mut validate = Tally::new("matroid axioms");
    let mut submodular = Tally::new("rank submodularity");
    let mut criterion = Tally::new("independent iff |A| = r(A)");
    let mut loops = Tally::new("loop and coloop characterization");
    let mut dual = Tally::new("dual involution");
    for m in u.matroids() {
        validate.check(Matroid::validate(m.n(), m.independents().to_vec()).is_ok(), || m.to_string());
        let ground = m.ground();
        for a in ground.subsets() {
            criterion.check(m.is_independent(a) == (m.rank(a) == a.len()), || format!("{m} {a}"));
            for b in ground.subsets() {
                let ok = m.rank(a.union(b)) + m.rank(a.intersection(b)) <= m.rank(a) + m.rank(b);
                submodular.check(ok, || format!("{m} {a} {b}"));
            }
        }
        for e in 0..m.n() {
            let single = SubsetMask::singleton(e);
            loops.check(m.is_loop(e) == (m.rank(single) == 0), || format!("{m} loop {e}"));
            let in_every_basis = m.rank(ground.without(e)) < m.matroid_rank();
            loops.check(m.is_coloop(e) == in_every_basis, || format!("{m} coloop {e}"));
        }
        dual.check(m.dual().dual() == *m, || m.to_string());
    }
    vec![validate.finish(), submodular.finish(), criterion.finish(), loops.finish(), dual.finish()]
}

fn minor_identities(u: &Universe) -> Vec<SuiteResult> {
    let mut deletion = Tally::new("deletion equals restriction to complement");
    let mut composition = Tally::new("restriction/deletion composition");
    let mut contraction = Tally::new("contraction independent of chosen basis");
    let mut direct = Tally::new("direct sum compatibility");
    let mut closure = Tally::new("catalog closed under minors and duals");
    for m in u.matroids() {
        let ground = m.ground();
        for x in ground.subsets() {
            deletion.check(m.deletion(x) == m.restriction(ground.difference(x)), || format!("{m} {x}"));
            for x2 in x.subsets() {
                let restricted = m.restriction(x);
                let inner = x2.compress(x);
                composition.check(restricted.restriction(inner) == m.restriction(x2), || format!("{m} {x} {x2}"));
                composition.check(
                    restricted.deletion(inner) == m.restriction(x.difference(x2)),
                    || format!("{m} {x} {x2}"),
                );
            }
            let rest = ground.difference(x);
            for y in rest.subsets() {
                let deleted = m.deletion(x);
                let inner = y.compress(rest);
                composition.check(deleted.restriction(inner) == m.restriction(y), || format!("{m} {x} {y}"));
                composition.check(deleted.deletion(inner) == m.deletion(x.union(y)), || format!("{m} {x} {y}"));
            }
            let reference = m.contraction(x);
            let restricted = m.restriction(x);
            for basis in restricted.bases() {
                let ok = m.contraction_via(x, basis.expand(x)) == reference;
                contraction.check(ok, || format!("{m} {x} {basis}"));
            }
            for minor in [m.restriction(x), m.deletion(x), m.contraction(x)] {
                let present = u
                    .catalogs
                    .get(minor.n())
                    .is_some_and(|c| canonical_key(&minor).is_ok_and(|k| c.keys().any(|key| *key == k)));
                closure.check(present, || format!("{m} minor by {x}"));
            }
        }
        let dual_key = canonical_key(&m.dual());
        closure.check(
            dual_key.is_ok_and(|k| u.catalogs[m.n()].keys().any(|key| *key == k)),
            || format!("dual of {m}"),
        );
    }
    for (a, b) in u.pairs(u.max_n()) {
        let sum = a.direct_sum(b);
        for a1 in a.ground().subsets() {
            for b1 in b.ground().subsets() {
                let joint = SubsetMask(a1.bits() | (b1.bits() << a.n()));
                direct.check(
                    a.restriction(a1).direct_sum(&b.restriction(b1)) == sum.restriction(joint),
                    || format!("{a} {b} {a1} {b1}"),
                );
                direct.check(
                    a.deletion(a1).direct_sum(&b.deletion(b1)) == sum.deletion(joint),
                    || format!("{a} {b} {a1} {b1}"),
                );
            }
        }
    }
    vec![
        deletion.finish(),
        composition.finish(),
        contraction.finish(),
        direct.finish(),
        closure.finish(),
    ]
}

fn coalgebra_laws(u: &Universe) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    for mode in CoproductMode::ALL {
        let mut coassoc = Tally::new(format!("coassociativity ({mode})"));
        let mut counit = Tally::new(format!("counit laws ({mode})"));
        let mut grading = Tally::new(format!("coproduct respects grading ({mode})"));
        for m in u.matroids() {
            coassoc.check_result(
                iterated_coproduct(mode, m, Side::Left)
                    .and_then(|l| Ok(l == iterated_coproduct(mode, m, Side::Right)?)),
                || m.to_string(),
            );
            counit.check_result(
                (|| {
                    let delta = coproduct(mode, m)?;
                    let me = ModuleElement::from_monomial(Monomial::from_matroid(m)?);
                    Ok(counit_on_leg(&delta, 0)? == me && counit_on_leg(&delta, 1)? == me)
                })(),
                || m.to_string(),
            );
            grading.check_result(
                coproduct(mode, m).map(|d| d.terms().all(|(legs, _)| legs[0].degree() + legs[1].degree() == m.n())),
                || m.to_string(),
            );
        }
        out.extend([coassoc.finish(), counit.finish(), grading.finish()]);
    }
    let mut cocommutative = Tally::new("cocommutativity (rd)");
    for m in u.matroids() {
        cocommutative.check_result(
            coproduct(CoproductMode::RestrictionDeletion, m).and_then(|d| Ok(d.swap()? == d)),
            || m.to_string(),
        );
    }
    out.push(cocommutative.finish());
    out
}

fn multiplicativity(u: &Universe) -> Vec<SuiteResult> {
    let mode = CoproductMode::RestrictionDeletion;
    let mut tally = Tally::new("multiplicativity (rd)");
    for (a, b) in u.pairs(u.max_n() + 1) {
        tally.check_result(
            (|| {
                let product = Monomial::from_matroid(a)?.product(&Monomial::from_matroid(b)?);
                let lhs = coproduct(mode, &a.direct_sum(b))?;
                Ok(coproduct_monomial(mode, &product)?.flatten()? == lhs)
            })(),
            || format!("{a} ⊕ {b}"),
        );
    }
    vec![tally.finish()]
}

fn antipode_law(u: &Universe) -> Vec<SuiteResult> {
    let mut tally = Tally::new("antipode law (rd)");
    for m in u.matroids() {
        tally.check_result(
            (|| {
                let e = ModuleElement::from_monomial(Monomial::from_matroid(m)?);
                let expected = if m.n() == 0 {
                    ModuleElement::one()
                } else {
                    ModuleElement::zero()
                };
                Ok(antipode_convolution(&e, 0)? == expected && antipode_convolution(&e, 1)? == expected)
            })(),
            || m.to_string(),
        );
    }
    vec![tally.finish()]
}

fn dendriform(u: &Universe) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    for mode in CoproductMode::ALL {
        let mut sum = Tally::new(format!("split sums to reduced coproduct ({mode})"));
        let mut legs = Tally::new(format!("split left legs ({mode})"));
        let mut axioms = [
            Tally::new(format!("dendriform identity 1 ({mode})")),
            Tally::new(format!("dendriform identity 2 ({mode})")),
            Tally::new(format!("dendriform identity 3 ({mode})")),
        ];
        for m in u.nonempty() {
            sum.check_result(
                split(mode, m).and_then(|p| Ok(&p.prec + &p.succ == reduced_coproduct(mode, m)?)),
                || m.to_string(),
            );
            legs.check_result(
                split(mode, m).map(|p| {
                    let dependent = p.prec.terms().all(|(l, _)| {
                        l[0].single().is_some_and(|k| k.n() > k.rank())
                    });
                    let free = p.succ.terms().all(|(l, _)| {
                        l[0].single().is_some_and(|k| k.n() == k.rank())
                    });
                    dependent && free
                }),
                || m.to_string(),
            );
            match dendriform_sides(mode, m) {
                Ok(sides) => {
                    for (tally, side) in axioms.iter_mut().zip(sides.iter()) {
                        tally.check(side.holds(), || m.to_string());
                    }
                }
                Err(e) => {
                    for tally in axioms.iter_mut() {
                        tally.check(false, || format!("{m}: {e}"));
                    }
                }
            }
        }
        out.extend([sum.finish(), legs.finish()]);
        out.extend(axioms.map(Tally::finish));
    }
    out
}

fn codendriform(u: &Universe) -> Vec<SuiteResult> {
    let mut tally = Tally::new("codendriform compatibility fails somewhere");
    let mut witnessed = false;
    for (a, b) in u.pairs(u.max_n()) {
        if let Ok(gap) = codendriform_gap(a, b) {
            witnessed |= !gap.is_zero();
        }
    }
    tally.check(witnessed, || "every pair satisfies the compatibility".to_string());
    vec![tally.finish()]
}

fn characters(u: &Universe) -> Vec<SuiteResult> {
    let mut closed = Tally::new("exp closed form a^c b^l");
    let mut integral = Tally::new("exp values are integral");
    let mut alpha_p = Tally::new("alpha = s^|E| P");
    let mut four = Tally::new("four-factor alpha");
    let (x, y, s) = (Polynomial::x(), Polynomial::y(), Polynomial::s());
    let exp = exp_loop_coloop(x.clone(), y.clone());
    for m in u.matroids() {
        let (c, l) = m.element_counts(m.ground());
        let expected = &x.pow(c as u32) * &y.pow(l as u32);
        match exp.as_ref().map_err(Clone::clone).and_then(|f| f.eval_matroid(m)) {
            Ok(value) => {
                integral.check(value.is_integral(), || m.to_string());
                closed.check(value == expected, || m.to_string());
            }
            Err(e) => closed.check(false, || format!("{m}: {e}")),
        }
        let scaled = &s.pow(m.n() as u32) * &poly_p(m);
        alpha_p.check_result(alpha(m).map(|a| a == scaled), || m.to_string());
        four.check_result(
            alpha_four_factor(m).and_then(|f| Ok(f == alpha(m)?)),
            || m.to_string(),
        );
    }
    vec![closed.finish(), integral.finish(), alpha_p.finish(), four.finish()]
}

fn polynomial_identities(u: &Universe) -> Vec<SuiteResult> {
    let mut convolution = Tally::new("convolution identity for P");
    let mut recursion = Tally::new("deletion recursions for P");
    let mut monomial = Tally::new("P = x^c y^l");
    let mut multiplicative = Tally::new("P multiplicative over direct sums");
    let mut witnesses = Tally::new("negative witnesses");
    for m in u.matroids() {
        let p = poly_p(m);
        convolution.check(poly_p_convolution_rhs(m) == p, || m.to_string());
        monomial.check(poly_p_closed_form(m) == p, || m.to_string());
        for e in 0..m.n() {
            recursion.check_result(poly_p_recursion_check(m, e), || format!("{m} {e}"));
        }
    }
    for (a, b) in u.pairs(u.max_n() + 1) {
        multiplicative.check(poly_p(&a.direct_sum(b)) == &poly_p(a) * &poly_p(b), || format!("{a} ⊕ {b}"));
    }
    let u12 = Matroid::uniform(1, 2).expect("U_{1,2}");
    witnesses.check_result(
        deletion_contraction_sum(&u12, 0).map(|sum| sum != poly_p(&u12)),
        || "U_{1,2} deletion-contraction".to_string(),
    );
    let u01 = Matroid::uniform(0, 1).expect("U_{0,1}");
    witnesses.check(poly_p(&u01) != poly_p(&u01.dual()), || "U_{0,1} versus its dual".to_string());
    vec![
        convolution.finish(),
        recursion.finish(),
        monomial.finish(),
        multiplicative.finish(),
        witnesses.finish(),
    ]
}

