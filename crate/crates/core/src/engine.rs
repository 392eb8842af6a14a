//! Backend-generic motivic zeta functions and functional-equation checks.
//!
//! A backend exposes its Grothendieck ring and the λ-operations on pure
//! (positive or negative) objects through [`LambdaContext`]. The engine never
//! takes exterior or symmetric powers of a mixed object: it always works on
//! the two halves of a [`SignedObject`].

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::ring::Ring;
use crate::series::{LaurentSeries, Series};

pub trait LambdaContext {
    type Coeff: Ring;
    type Object: Clone;

    /// The decomposition `M ≅ M⁺ ⊕ M⁻`.
    fn split(&self, m: &Self::Object) -> SignedObject<Self::Object>;
    /// Rank of a pure object: `χ` if positive, `-χ` if negative.
    fn rank(&self, part: &Self::Object) -> usize;
    /// `[Sⁿ(M)]`.
    fn sym_class(&self, m: &Self::Object, n: usize) -> Result<Self::Coeff>;
    /// `[S⁰(M)], …, [Sⁿ(M)]`; backends may share work across `n`.
    fn sym_classes(&self, m: &Self::Object, n: usize) -> Result<Vec<Self::Coeff>> {
        (0..=n).map(|k| self.sym_class(m, k)).collect()
    }
    /// `[Λⁿ(M)]`.
    fn ext_class(&self, m: &Self::Object, n: usize) -> Result<Self::Coeff>;
    /// `[det M]`, a unit of the coefficient ring.
    fn det_class(&self, m: &Self::Object) -> Result<Self::Coeff>;
    fn dual(&self, m: &Self::Object) -> Result<Self::Object>;
    fn class_of(&self, m: &Self::Object) -> Result<Self::Coeff>;
    /// `[L]`.
    fn lefschetz_class(&self) -> Self::Coeff;
}

/// `positive ⊕ negative`; either half may be the zero object.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedObject<O> {
    pub positive: O,
    pub negative: O,
}

impl<O> SignedObject<O> {
    pub fn new(positive: O, negative: O) -> Self {
        SignedObject { positive, negative }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChiData {
    pub chi: i64,
    pub chi_plus: i64,
    pub chi_minus: i64,
}

pub fn chi_data<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>) -> ChiData {
    let chi_plus = ctx.rank(&m.positive) as i64;
    let chi_minus = -(ctx.rank(&m.negative) as i64);
    ChiData { chi: chi_plus + chi_minus, chi_plus, chi_minus }
}

/// `2(χ⁺ + |χ⁻|) + 8`, enough to over-determine both sides of the
/// functional equation.
pub fn default_order<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>) -> usize {
    let c = chi_data(ctx, m);
    2 * (c.chi_plus + c.chi_minus.abs()) as usize + 8
}

pub fn class_of_signed<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>) -> Result<C::Coeff> {
    Ok(ctx.class_of(&m.positive)?.add(&ctx.class_of(&m.negative)?))
}

pub fn dual_signed<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>) -> Result<SignedObject<C::Object>> {
    Ok(SignedObject::new(ctx.dual(&m.positive)?, ctx.dual(&m.negative)?))
}

/// `Σ_{n ≤ order} [Sⁿ(M)] Tⁿ`, assembled as `Z(M⁺)·Z(M⁻)`.
pub fn zeta_series<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>, order: usize) -> Result<Series<C::Coeff>> {
    let pos = ctx.sym_classes(&m.positive, order)?;
    let neg = ctx.sym_classes(&m.negative, ctx.rank(&m.negative).min(order))?;
    Ok(Series::new(pos, order).mul(&Series::new(neg, order)))
}

/// `Z(M,T) = Σ_{n ≤ -χ⁻} [Sⁿ(M⁻)]Tⁿ / Σ_{n ≤ χ⁺} [Λⁿ(M⁺)](-T)ⁿ`.
pub fn zeta_rational<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>) -> Result<RatFun<C::Coeff>> {
    let num: Vec<C::Coeff> =
        (0..=ctx.rank(&m.negative)).map(|n| ctx.sym_class(&m.negative, n)).collect::<Result<_>>()?;
    let den: Vec<C::Coeff> = (0..=ctx.rank(&m.positive))
        .map(|n| {
            let c = ctx.ext_class(&m.positive, n)?;
            Ok(if n % 2 == 1 { c.neg() } else { c })
        })
        .collect::<Result<_>>()?;
    RatFun::from_parts(Poly::new(num), Poly::new(den))
}

/// `det(M⁺) ⊗ det(M⁻)` as reported by the backend.
pub fn det_signed<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>) -> Result<C::Coeff> {
    Ok(ctx.det_class(&m.positive)?.mul(&ctx.det_class(&m.negative)?))
}

/// `Λ^{χ⁺}(M⁺) ⊗ S^{-χ⁻}(M⁻)⁻¹` computed from the λ-operations alone.
pub fn det_from_parts<C: LambdaContext>(ctx: &C, m: &SignedObject<C::Object>) -> Result<C::Coeff> {
    let top_pos = ctx.ext_class(&m.positive, ctx.rank(&m.positive))?;
    let top_neg = ctx.sym_class(&m.negative, ctx.rank(&m.negative))?;
    let inv = top_neg.unit_inverse().ok_or_else(|| Error::NotInvertibleClass(format!("{top_neg:?}")))?;
    Ok(top_pos.mul(&inv))
}

/// Expansion of `f(1/T)` as a Laurent series in `T` up to `T^order`, where
/// `f = num/den` has formal degrees `num_deg` and `den_deg` with unit top
/// coefficients.
fn expand_at_infinity<R: Ring>(f: &RatFun<R>, num_deg: usize, den_deg: usize, order: i64) -> Result<LaurentSeries<R>> {
    // f(1/T) = T^(den_deg - num_deg) · rev(num) / rev(den)
    let shift = den_deg as i64 - num_deg as i64;
    let len = (order - shift).max(0) as usize;
    let rf = RatFun::from_parts(f.num.reversed(num_deg), f.den.reversed(den_deg))?;
    Ok(LaurentSeries::from_series(&rf.to_series(len)?, shift))
}

fn expand_at_zero<R: Ring>(f: &RatFun<R>, shift: i64, order: i64) -> Result<Series<R>> {
    f.to_series((order - shift).max(0) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FuncEqForm {
    /// `Z(M*, 1/T) = (-1)^{χ⁺} det(M) T^χ Z(M, T)`.
    General,
    /// `Z(M*, 1/T) = det(M) (-T)^χ Z(M, T)`, valid when `χ⁻` is even.
    SignSimplified,
    /// `Z(M, 1/T) = (-T)^χ det(M) [L]^{-dχ} Z(M, [L]^{-d} T)` for
    /// `M* = M ⊗ L^{-d}`.
    SelfDual { d: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<R> {
    pub exponent: i64,
    pub lhs: R,
    pub rhs: R,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuncEqReport<R> {
    pub form: FuncEqForm,
    /// Whether the form's hypotheses hold (for the sign-simplified form: `χ⁻`
    /// even). An inapplicable form is still evaluated.
    pub applicable: bool,
    pub holds: bool,
    pub order_checked: i64,
    pub first_mismatch: Option<Mismatch<R>>,
    pub chi: ChiData,
    pub det_class: R,
    pub lhs: LaurentSeries<R>,
    pub rhs: LaurentSeries<R>,
}

fn compare<R: Ring>(
    form: FuncEqForm,
    applicable: bool,
    chi: ChiData,
    det_class: R,
    lhs: LaurentSeries<R>,
    rhs: LaurentSeries<R>,
    order: i64,
) -> FuncEqReport<R> {
    let first_mismatch = (-order..=order).find_map(|e| {
        let (l, r) = (lhs.coeff(e).expect("lhs window"), rhs.coeff(e).expect("rhs window"));
        (l != r).then_some(Mismatch { exponent: e, lhs: l, rhs: r })
    });
    FuncEqReport {
        form,
        applicable,
        holds: first_mismatch.is_none(),
        order_checked: order,
        first_mismatch,
        chi,
        det_class,
        lhs,
        rhs,
    }
}

fn signed<R: Ring>(x: R, negative: bool) -> R {
    if negative {
        x.neg()
    } else {
        x
    }
}

fn funceq_dual_form<C: LambdaContext>(
    ctx: &C,
    m: &SignedObject<C::Object>,
    order: usize,
    form: FuncEqForm,
) -> Result<FuncEqReport<C::Coeff>> {
    let order = order as i64;
    let chi = chi_data(ctx, m);
    let dual = dual_signed(ctx, m)?;
    let lhs =
        expand_at_infinity(&zeta_rational(ctx, &dual)?, ctx.rank(&dual.negative), ctx.rank(&dual.positive), order)?;
    let det = det_signed(ctx, m)?;
    let (negative, applicable) = match form {
        FuncEqForm::General => (chi.chi_plus % 2 != 0, true),
        _ => (chi.chi % 2 != 0, chi.chi_minus % 2 == 0),
    };
    let factor = signed(det.clone(), negative);
    let rhs_series = expand_at_zero(&zeta_rational(ctx, m)?, chi.chi, order)?.scale(&factor);
    let rhs = LaurentSeries::from_series(&rhs_series, chi.chi);
    Ok(compare(form, applicable, chi, det, lhs, rhs, order))
}

/// Checks `Z(M*, 1/T) = (-1)^{χ⁺} det(M) T^χ Z(M, T)` coefficientwise on the
/// exponent window `[-order, order]`.
pub fn funceq_check<C: LambdaContext>(
    ctx: &C,
    m: &SignedObject<C::Object>,
    order: usize,
) -> Result<FuncEqReport<C::Coeff>> {
    funceq_dual_form(ctx, m, order, FuncEqForm::General)
}

/// Checks the sign-simplified form `Z(M*, 1/T) = det(M) (-T)^χ Z(M, T)`.
/// The report is marked inapplicable when `χ⁻` is odd.
pub fn funceq_check_sign_simplified<C: LambdaContext>(
    ctx: &C,
    m: &SignedObject<C::Object>,
    order: usize,
) -> Result<FuncEqReport<C::Coeff>> {
    funceq_dual_form(ctx, m, order, FuncEqForm::SignSimplified)
}

/// Checks `Z(M, 1/T) = (-T)^χ det(M) [L]^{-dχ} Z(M, [L]^{-d} T)` after
/// verifying the duality hypothesis `[M*] = [M]·[L]^{-d}`.
///
/// This is [`funceq_check`] rewritten through `Z(M ⊗ L^{-d}, T) =
/// Z(M, [L]^{-d} T)`. The twist `[L]^{-dχ}` equals `det(M)⁻²` whenever
/// `det(M)² = [L]^{dχ}`, so the factor is `det(M)⁻¹` for such objects.
pub fn funceq_check_selfdual<C: LambdaContext>(
    ctx: &C,
    m: &SignedObject<C::Object>,
    d: i64,
    order: usize,
) -> Result<FuncEqReport<C::Coeff>> {
    let l_inv_d = ctx.lefschetz_class().pow_signed(-d).ok_or(Error::NotSelfDual(d))?;
    let dual = dual_signed(ctx, m)?;
    if class_of_signed(ctx, &dual)? != class_of_signed(ctx, m)?.mul(&l_inv_d) {
        return Err(Error::NotSelfDual(d));
    }
    let order = order as i64;
    let chi = chi_data(ctx, m);
    let zr = zeta_rational(ctx, m)?;
    let lhs = expand_at_infinity(&zr, ctx.rank(&m.negative), ctx.rank(&m.positive), order)?;
    let det = det_signed(ctx, m)?;
    let twist = l_inv_d.pow_signed(chi.chi).ok_or(Error::NotSelfDual(d))?;
    let factor = signed(det.mul(&twist), chi.chi % 2 != 0);
    let rhs_series = expand_at_zero(&zr, chi.chi, order)?.substitute_scaled(&l_inv_d).scale(&factor);
    let rhs = LaurentSeries::from_series(&rhs_series, chi.chi);
    Ok(compare(FuncEqForm::SelfDual { d }, chi.chi_minus % 2 == 0, chi, det, lhs, rhs, order))
}
