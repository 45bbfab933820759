//! Both sides of the product formula for finite abelian covers, and the
//! classical single-variable branched-cover formulas.
//!
//! For a cover with deck group `G` and `pi = pi_bar . phi`, the torsion of
//! the cover twisted by the pulled-back `(phi_hat, rho_hat)` equals, up to
//! units, the product over all characters `xi` of `G` of the torsion of the
//! base twisted by `(phi (x) rho) (x) xi`. [`lhs_direct`] computes the left
//! side on a Reidemeister-Schreier presentation and [`rhs_product`] the
//! right side on the base presentation; [`verify_cover`] compares them.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groups::{reidemeister_schreier, EpiToG, FinAbGroup, Presentation, SubgroupData};
use crate::reps::{characters, check_kernel, pullback, pullback_character, AbelMap, Character, MatRep, TensorRep};
use crate::scalars::{cyclo_embed_root_of_unity, CycloField, CycloNum, LaurentPoly, Rational};
use crate::torsion::{equal_up_to_unit, supported_in_lattice, wada_torsion, TorsionValue, UnitWitness};

/// A finite abelian cover: the deck group and `pi_bar : Z^n -> G`.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    pub group: FinAbGroup,
    pub pi_bar: EpiToG,
}

impl CoverSpec {
    pub fn new(group: FinAbGroup, pi_bar: EpiToG) -> Self {
        CoverSpec { group, pi_bar }
    }
}

/// Wall-clock timings, filled in by callers that can measure time.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub lhs_seconds: Option<f64>,
    pub rhs_seconds: Option<f64>,
}

/// Outcome of [`verify_cover`].
#[derive(Debug, Clone)]
pub struct CoverReport {
    /// `Err` when the cover presentation could not be certified.
    pub lhs: Result<TorsionValue>,
    pub rhs: TorsionValue,
    pub factors: Vec<(Character, TorsionValue)>,
    pub equal: bool,
    pub witness: Option<UnitWitness>,
    /// For cyclic covers: whether the left side lies in `Q(zeta)(t^L)` with
    /// `L` the image of `phi_hat`.
    pub sublattice_ok: Option<bool>,
    pub cover_generators: Option<usize>,
    pub timings: Timings,
}

fn check_conductor(cover: &CoverSpec, field: &Arc<CycloField>) -> Result<()> {
    let e = cover.group.exponent();
    if !field.conductor().is_multiple_of(e) {
        return Err(Error::ConductorMismatch {
            order: e,
            conductor: field.conductor(),
        });
    }
    Ok(())
}

fn check_vars(phi: &AbelMap, cover: &CoverSpec) -> Result<()> {
    if cover.pi_bar.num_vars() != phi.num_vars() {
        return Err(Error::validation(format!(
            "pi_bar has {} columns but phi has {} variables",
            cover.pi_bar.num_vars(),
            phi.num_vars()
        )));
    }
    Ok(())
}

fn factor(base: &TensorRep, p: &Presentation, xi: &Character, cover: &CoverSpec) -> Result<TorsionValue> {
    let xi_bar = pullback_character(xi, &cover.group, &cover.pi_bar, base.field())?;
    wada_torsion(p, &base.twist(&xi_bar)).map_err(|e| match e {
        Error::NotAcyclic(msg) => Error::NotAcyclic(format!("character xi = {xi}: {msg}")),
        other => other,
    })
}

/// `prod_xi tau(p; twist(phi (x) rho, xi . pi_bar))` over all characters in
/// lexicographic order, with the individual factors.
///
/// With the `parallel` feature the factors are computed on the rayon pool;
/// the product is always taken in enumeration order.
pub fn rhs_product(
    p: &Presentation,
    phi: &AbelMap,
    rho: &MatRep,
    cover: &CoverSpec,
) -> Result<(TorsionValue, Vec<(Character, TorsionValue)>)> {
    check_vars(phi, cover)?;
    check_conductor(cover, rho.field())?;
    let base = TensorRep::new(phi, rho)?;
    let chars = characters(&cover.group);

    #[cfg(feature = "parallel")]
    let values: Vec<Result<TorsionValue>> = {
        use rayon::prelude::*;
        chars.par_iter().map(|xi| factor(&base, p, xi, cover)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Result<TorsionValue>> =
        chars.iter().map(|xi| factor(&base, p, xi, cover)).collect();

    let mut factors = Vec::with_capacity(chars.len());
    for (xi, v) in chars.into_iter().zip(values) {
        factors.push((xi, v?));
    }
    let mut acc = factors[0].1.clone();
    for (_, v) in &factors[1..] {
        acc = acc.mul(v);
    }
    Ok((acc, factors))
}

/// Kernel presentation and pulled-back data for the cover.
pub fn cover_data(
    p: &Presentation,
    phi: &AbelMap,
    rho: &MatRep,
    cover: &CoverSpec,
) -> Result<(SubgroupData, AbelMap, MatRep)> {
    check_vars(phi, cover)?;
    let sub = reidemeister_schreier(p, phi.images(), &cover.group, &cover.pi_bar)?;
    let (phi_hat, rho_hat) = pullback(&sub, phi, rho)?;
    check_kernel(&phi_hat, &cover.group, &cover.pi_bar)?;
    let want = crate::scalars::Lattice::new(phi.num_vars(), &kernel_basis(cover)?);
    let got = phi_hat.image_lattice();
    for v in got.generators() {
        if !want.contains(&v)? {
            return Err(Error::Internal(String::from("phi_hat leaves ker pi_bar")));
        }
    }
    for v in want.generators() {
        if !got.contains(&v)? {
            return Err(Error::Internal(String::from("phi_hat does not fill ker pi_bar")));
        }
    }
    Ok((sub, phi_hat, rho_hat))
}

/// A generating set of `ker pi_bar` in `Z^n`: the standard basis vectors
/// scaled and corrected by the Smith form of `[pi_bar | diag(q)]`.
fn kernel_basis(cover: &CoverSpec) -> Result<Vec<Vec<i64>>> {
    let n = cover.pi_bar.num_vars();
    let r = cover.group.rank();
    let orders = cover.group.orders();
    let stacked = crate::scalars::IntMatrix::from_fn(r, n + r, |i, j| {
        if j < n {
            cover.pi_bar.matrix()[(i, j)]
        } else if j - n == i {
            orders[i] as i64
        } else {
            0
        }
    });
    // kernel of the stacked map is spanned by the columns of V beyond rank
    let snf = crate::scalars::smith_normal_form(&stacked)?;
    let rank = snf.rank();
    Ok((rank..n + r)
        .map(|c| (0..n).map(|i| snf.v[(i, c)]).collect())
        .collect())
}

/// Torsion of the cover computed on its own presentation.
pub fn lhs_direct(p: &Presentation, phi: &AbelMap, rho: &MatRep, cover: &CoverSpec) -> Result<TorsionValue> {
    let (sub, phi_hat, rho_hat) = cover_data(p, phi, rho, cover)?;
    let rep = TensorRep::new(&phi_hat, &rho_hat)?;
    wada_torsion(&sub.presentation, &rep)
}

/// Computes both sides and compares them up to units.
///
/// A failure to certify the cover presentation is reported in
/// [`CoverReport::lhs`] rather than as an error.
pub fn verify_cover(p: &Presentation, phi: &AbelMap, rho: &MatRep, cover: &CoverSpec) -> Result<CoverReport> {
    verify_cover_timed(p, phi, rho, cover, None)
}

/// [`verify_cover`] with `clock` (seconds since any fixed origin) used to
/// fill in [`CoverReport::timings`].
pub fn verify_cover_timed(
    p: &Presentation,
    phi: &AbelMap,
    rho: &MatRep,
    cover: &CoverSpec,
    clock: Option<&dyn Fn() -> f64>,
) -> Result<CoverReport> {
    let now = || clock.map(|c| c());
    let t0 = now();
    let (rhs, factors) = rhs_product(p, phi, rho, cover)?;
    let t1 = now();
    let mut cover_generators = None;
    let lhs = cover_data(p, phi, rho, cover).and_then(|(sub, phi_hat, rho_hat)| {
        cover_generators = Some(sub.presentation.num_generators());
        wada_torsion(&sub.presentation, &TensorRep::new(&phi_hat, &rho_hat)?)
    });
    let t2 = now();
    let span = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| b - a);
    let timings = Timings {
        rhs_seconds: span(t0, t1),
        lhs_seconds: span(t1, t2),
    };
    if let Err(e) = &lhs {
        if !matches!(e, Error::Unsupported(_)) {
            return Err(e.clone());
        }
    }
    let (equal, witness, sublattice_ok) = match &lhs {
        Ok(l) => {
            let w = equal_up_to_unit(l, &rhs)?;
            let sub = if cover.group.rank() == 1 {
                Some(supported_in_lattice(&l.value, &l.units.lattice)?)
            } else {
                None
            };
            (w.is_some(), w, sub)
        }
        Err(_) => (false, None, None),
    };
    Ok(CoverReport {
        lhs,
        rhs,
        factors,
        equal,
        witness,
        sublattice_ok,
        cover_generators,
        timings,
    })
}

fn require_univariate(delta: &LaurentPoly) -> Result<()> {
    if delta.num_vars_used() > 1 {
        return Err(Error::validation("expected a polynomial in one variable"));
    }
    if delta.is_zero() {
        return Err(Error::validation("the polynomial must be nonzero"));
    }
    Ok(())
}

/// `prod_{k=0}^{q-1} delta(zeta_q^k t)`, normalized to a polynomial with
/// nonzero constant term and positive leading coefficient.
///
/// The product is checked to have rational coefficients and to be a
/// polynomial in `t^q`.
pub fn branched_product(delta: &LaurentPoly, q: u64, field: &Arc<CycloField>) -> Result<LaurentPoly> {
    require_univariate(delta)?;
    if q == 0 {
        return Err(Error::validation("q must be at least 1"));
    }
    let mut acc = LaurentPoly::one();
    for k in 0..q {
        let z = cyclo_embed_root_of_unity(q, k as i64, field)?;
        acc = acc * delta.substitute_scale(&[z]);
    }
    if acc.terms().any(|(_, c)| !c.is_rational()) {
        return Err(Error::Internal(String::from("branched product is not rational")));
    }
    let acc = acc.shift(&acc.monomial_content().unwrap().inv());
    if acc.terms().any(|(m, _)| m.exp(0) % q as i64 != 0) {
        return Err(Error::Internal(format!("branched product is not a polynomial in t^{q}")));
    }
    let lead = acc.leading().unwrap().1.clone();
    Ok(if lead.as_rational().is_some_and(|r| r.is_negative()) {
        -acc
    } else {
        acc
    })
}

/// `|H_1|` of the `q`-fold cyclic branched cover, `|prod_{k=1}^{q-1}
/// delta(zeta_q^k)|`; `None` means infinite.
pub fn homology_order(delta: &LaurentPoly, q: u64, field: &Arc<CycloField>) -> Result<Option<Rational>> {
    require_univariate(delta)?;
    if q < 2 {
        return Err(Error::validation("q must be at least 2"));
    }
    let mut acc = CycloNum::one();
    for k in 1..q {
        let z = cyclo_embed_root_of_unity(q, k as i64, field)?;
        acc = acc * evaluate_at(delta, &z);
    }
    let r = acc
        .as_rational()
        .ok_or_else(|| Error::Internal(String::from("norm is not rational")))?;
    Ok(if r.is_zero() { None } else { Some(r.abs()) })
}

fn evaluate_at(p: &LaurentPoly, x: &CycloNum) -> CycloNum {
    p.terms().fold(CycloNum::zero(), |acc, (m, c)| acc + c.clone() * x.pow(m.exp(0)))
}

/// The smallest conductor that holds every character value of `G` and
/// the given extra root-of-unity orders.
pub fn required_conductor(group: &FinAbGroup, extra: &[u64]) -> u64 {
    extra.iter().fold(group.exponent(), |a, &b| a.lcm(&b.max(1)))
}

/// Integer value of a homology order, when it is one.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}
