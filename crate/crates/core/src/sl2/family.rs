use crate::funcfield::{BiRat, Field, Poly, RatFunc};

use super::{commutator, Mat2, Sl2Error};

/// Parameters `(c, h, d, δ)` of the commutator family, with the derived
/// quantities `X = 1 − dδh + d²h²` and `Y = δ² − dδh + h²` both nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    pub c: RatFunc,
    pub h: RatFunc,
    pub d: RatFunc,
    pub delta: RatFunc,
    x: RatFunc,
    y: RatFunc,
}

impl FamilyParams {
    pub fn new(c: RatFunc, h: RatFunc, d: RatFunc, delta: RatFunc) -> Result<Self, Sl2Error> {
        for (name, v) in [("c", &c), ("h", &h), ("d", &d), ("delta", &delta)] {
            if v.is_zero() {
                return Err(Sl2Error::ZeroParameter(name));
            }
        }
        let dh = d.mul(&h);
        let ddh = dh.mul(&delta);
        let x = RatFunc::one(c.modulus()).sub(&ddh).add(&dh.mul(&dh));
        let y = delta.mul(&delta).sub(&ddh).add(&h.mul(&h));
        if x.is_zero() {
            return Err(Sl2Error::DegenerateXY("X"));
        }
        if y.is_zero() {
            return Err(Sl2Error::DegenerateXY("Y"));
        }
        Ok(Self { c, h, d, delta, x, y })
    }

    pub fn p(&self) -> u32 {
        self.c.modulus()
    }

    #[allow(non_snake_case)]
    pub fn X(&self) -> &RatFunc {
        &self.x
    }

    #[allow(non_snake_case)]
    pub fn Y(&self) -> &RatFunc {
        &self.y
    }
}

/// The closed forms for `A`, `B`, `AB`, `BA`, the commutator and the three
/// traces, each written directly in terms of the parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyFormulas {
    pub a: Mat2<RatFunc>,
    pub b: Mat2<RatFunc>,
    pub ab: Mat2<RatFunc>,
    pub ba: Mat2<RatFunc>,
    pub commutator: Mat2<RatFunc>,
    pub tr_a: RatFunc,
    pub tr_b: RatFunc,
    pub tr_ab: RatFunc,
}

impl FamilyFormulas {
    pub fn new(fp: &FamilyParams) -> Self {
        let FamilyParams { c, h, d, delta, x, y } = fp;
        let p = fp.p();
        let one = RatFunc::one(p);
        let div = |a: &RatFunc, b: &RatFunc| a.div(b).expect("nonzero by construction");
        let (d2, delta2, h2) = (d.mul(d), delta.mul(delta), h.mul(h));
        let ddh = d.mul(delta).mul(h);
        let cx = c.mul(x);
        let cy = c.mul(y);

        let a12 = ddh.mul(&one.sub(&d2)).add(&d2.mul(&delta2)).sub(&one);
        let a = Mat2::new(div(&d.mul(y), x), div(&a12, &cx), c.clone(), d.clone());

        let b12 = d.mul(delta).mul(&one.sub(&delta2)).add(&h.mul(&d2.mul(&delta2).sub(&one)));
        let b = Mat2::new(div(&delta.mul(x), y), div(&b12, &cy), c.mul(h), delta.clone());

        let z = d.mul(delta).mul(&one.add(&h2)).sub(h);
        let off = d.mul(h).mul(&delta2.sub(&one)).add(&delta.mul(&d2.sub(&one)));
        let low = c.mul(&delta.add(&d.mul(&h2).mul(h)));
        let ab = Mat2::new(div(&z, x), div(&off, &cx), div(&low, y), div(&z, y));
        let ba = Mat2::new(div(&z, y), div(&off, &cy), div(&low, x), div(&z, x));

        let commutator = Mat2::diag(div(y, x), div(x, y));
        let xy = x.add(y);
        Self {
            a,
            b,
            ab,
            ba,
            commutator,
            tr_a: div(&d.mul(&xy), x),
            tr_b: div(&delta.mul(&xy), y),
            tr_ab: div(&z.mul(&xy), &x.mul(y)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatfrmPair {
    pub a: Mat2<RatFunc>,
    pub b: Mat2<RatFunc>,
    pub x: RatFunc,
    pub y: RatFunc,
}

/// Builds `A`, `B` and checks the three trace formulas.
pub fn matfrm_pair(params: &FamilyParams) -> MatfrmPair {
    let f = FamilyFormulas::new(params);
    assert!(f.a.is_sl2() && f.b.is_sl2(), "family matrices must be unimodular");
    assert_eq!(f.a.trace(), f.tr_a);
    assert_eq!(f.b.trace(), f.tr_b);
    assert_eq!(f.a.mul(&f.b).trace(), f.tr_ab);
    MatfrmPair { a: f.a, b: f.b, x: params.x.clone(), y: params.y.clone() }
}

/// `(1, x, 1/x², x + 1)` for odd `p`; for `p = 2`,
/// `(1, x² + x + 1, x³/((x² + x + 1)(x⁵ + 1)), x²)`.
pub fn builtin_family(p: u32) -> FamilyParams {
    let x = RatFunc::x(p);
    let one = RatFunc::one(p);
    let poly = |c: &[i64]| RatFunc::from_poly(Poly::from_coeffs(p, c));
    let (h, d, delta) = if p == 2 {
        let h = poly(&[1, 1, 1]);
        let d = poly(&[0, 0, 0, 1]).div(&h.mul(&poly(&[1, 0, 0, 0, 0, 1]))).unwrap();
        (h, d, poly(&[0, 0, 1]))
    } else {
        (x.clone(), x.mul(&x).inv().unwrap(), x.add(&one))
    };
    FamilyParams::new(one, h, d, delta).expect("builtin parameters are valid")
}

/// `(C, D) = (T B T⁻¹, T A T⁻¹)` with `T = diag(1, y)`.
pub fn shalen_extend(a: &Mat2<RatFunc>, b: &Mat2<RatFunc>) -> (Mat2<BiRat>, Mat2<BiRat>) {
    let d = conj_by_t(a);
    let c = conj_by_t(b);
    let lhs = commutator(&a.lift(), &b.lift()).expect("unimodular");
    let rhs = commutator(&d, &c).expect("unimodular");
    assert_eq!(lhs, rhs, "commutator relation fails for the extended pair");
    (c, d)
}

pub(crate) fn conj_by_t(m: &Mat2<RatFunc>) -> Mat2<BiRat> {
    let p = m.modulus();
    let y = BiRat::y(p);
    Mat2::new(
        BiRat::from_ratfunc(m.m11.clone()),
        BiRat::from_ratfunc(m.m12.clone()).div(&y).unwrap(),
        BiRat::from_ratfunc(m.m21.clone()).mul(&y),
        BiRat::from_ratfunc(m.m22.clone()),
    )
}
