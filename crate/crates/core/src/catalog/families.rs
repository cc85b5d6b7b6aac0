use crate::cyclotomic::{gcd, CycloNum};
use crate::hopf::{AlgebraBuilder, HopfError, PresentedHopfAlgebra};

use super::HnParams;

fn invalid(msg: String) -> HopfError {
    HopfError::Invalid(msg)
}

fn primitive_root(n: u32, k: u32) -> Result<CycloNum, HopfError> {
    if n == 0 || gcd(k as u64, n as u64) != 1 {
        return Err(invalid(format!("ζ_{n}^{k} is not a primitive {n}-th root of unity")));
    }
    Ok(CycloNum::root_of_unity(n, k as i64))
}

/// `y^n = 1`, `x^N = 0`, `yx = ζ^t xy`, `Δ(x) = y^m ⊗ x + x ⊗ 1`, with the
/// given names for the skew-primitive and grouplike generators.
pub(crate) fn hnzmt_named(p: &HnParams, name: &str, xname: &str, yname: &str) -> Result<PresentedHopfAlgebra, HopfError> {
    let zeta = p.zeta();
    let mut b = AlgebraBuilder::new(name, p.n);
    b.var("zeta", zeta)
        .generator(xname, p.big_n())
        .generator(yname, p.n)
        .power(yname, "1")
        .power(xname, "0")
        .swap(yname, xname, &format!("zeta^{}*{xname}*{yname}", p.t))
        .grouplike(yname)
        .skew_primitive(xname, &format!("{yname}^{}", p.m), "1")
        .expected_dimension((p.big_n() * p.n) as usize);
    b.build()
}

/// The Taft algebra `T_n(q)`, `q = ζ_n^k`.
pub fn taft(n: u32, k: u32) -> Result<PresentedHopfAlgebra, HopfError> {
    if n < 2 {
        return Err(invalid("Taft algebras need n ≥ 2".into()));
    }
    primitive_root(n, k)?;
    hnzmt_named(&HnParams::new(n, k, 1, 1)?, &format!("T_{n}(ζ_{n}^{k})"), "x", "g")
}

/// `T_n(q)^*`, generated by grouplike `G` and `(G,1)`-skew primitive `X`.
pub fn taft_dual(n: u32, k: u32) -> Result<PresentedHopfAlgebra, HopfError> {
    if n < 2 {
        return Err(invalid("Taft algebras need n ≥ 2".into()));
    }
    primitive_root(n, k)?;
    hnzmt_named(&HnParams::new(n, k, 1, 1)?, &format!("T_{n}(ζ_{n}^{k})*"), "X", "G")
}

pub fn sweedler() -> PresentedHopfAlgebra {
    let mut h = taft(2, 1).expect("valid parameters");
    h.set_name("Sweedler");
    h
}

pub fn hnzmt(p: &HnParams) -> Result<PresentedHopfAlgebra, HopfError> {
    hnzmt_named(p, &p.label(), "x", "y")
}

/// `H_n(ζ,m,t)^* ≅ H_n(ζ,t,m)`, generated by `Y` and `X`.
pub fn hnzmt_dual(p: &HnParams) -> Result<PresentedHopfAlgebra, HopfError> {
    hnzmt_named(&p.dual(), &format!("{}*", p.label()), "X", "Y")
}

/// `T(n,N,α)`: `g^n = 1`, `x^N = α(g^N − 1)`, `gx = qxg` with `q = ζ_n^{(n/N)k}`.
pub fn gen_taft(n: u32, big_n: u32, alpha: u32, k: u32) -> Result<PresentedHopfAlgebra, HopfError> {
    if big_n < 2 || !n.is_multiple_of(big_n) {
        return Err(invalid(format!("T(n,N,α) needs N ≥ 2 dividing n, got n = {n}, N = {big_n}")));
    }
    if alpha > 1 {
        return Err(invalid("α must be 0 or 1".into()));
    }
    primitive_root(n, k)?;
    let q = CycloNum::root_of_unity(n, ((n / big_n) * k) as i64);
    let mut b = AlgebraBuilder::new(&format!("T({n},{big_n},{alpha})"), n);
    let power = if alpha == 0 { "0".to_string() } else { format!("g^{big_n} - 1") };
    b.var("q", q)
        .generator("x", big_n)
        .generator("g", n)
        .power("g", "1")
        .power("x", &power)
        .swap("g", "x", "q*x*g")
        .grouplike("g")
        .skew_primitive("x", "g", "1")
        .expected_dimension((n * big_n) as usize);
    b.build()
}

/// `T(4,2,1)`; `k` selects the fourth root `ζ = ζ_4^k` used by its dual and pairing.
pub fn t421(k: u32) -> Result<PresentedHopfAlgebra, HopfError> {
    primitive_root(4, k)?;
    let mut h = gen_taft(4, 2, 1, 1)?;
    h.set_name("T(4,2,1)");
    Ok(h)
}

/// The 8-dimensional dual `K` of `T(4,2,1)`.
pub fn t421_dual(k: u32) -> Result<PresentedHopfAlgebra, HopfError> {
    let zeta = primitive_root(4, k)?;
    let mut b = AlgebraBuilder::new("T(4,2,1)*", 4);
    b.var("zeta", zeta)
        .generator("X", 2)
        .generator("G", 4)
        .power("G", "1")
        .power("X", "0")
        .swap("G", "X", "zeta*X*G")
        .delta("G", "G ⊗ G - 2*X*G^3 ⊗ X*G")
        .counit("G", CycloNum::one(4))
        .antipode("G", "G^3")
        .delta("X", "G^2 ⊗ X + X ⊗ 1")
        .counit("X", CycloNum::zero(4))
        .antipode("X", "X*G^2")
        .expected_dimension(8);
    b.build()
}

fn uq_root(n: u32, k: u32) -> Result<CycloNum, HopfError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(invalid(format!("u_q(sl2) needs odd n ≥ 3, got {n}")));
    }
    primitive_root(n, k)
}

/// The Frobenius-Lusztig kernel `u_q(sl2)` with basis `E^i F^j K^l`.
pub fn uqsl2(n: u32, k: u32) -> Result<PresentedHopfAlgebra, HopfError> {
    let q = uq_root(n, k)?;
    let mut b = AlgebraBuilder::new(&format!("u_q(sl2), q = ζ_{n}^{k}"), n);
    b.var("q", q)
        .generator("E", n)
        .generator("F", n)
        .generator("K", n)
        .power("K", "1")
        .power("E", "0")
        .power("F", "0")
        .swap("K", "E", "q^2*E*K")
        .swap("K", "F", "q^-2*F*K")
        .swap("F", "E", "E*F - (K - K^-1)/(q - q^-1)")
        .grouplike("K")
        .skew_primitive("E", "1", "K")
        .skew_primitive("F", "K^-1", "1")
        .expected_dimension((n * n * n) as usize);
    b.build()
}

/// The quotient of `O_q(SL2)` dual to `u_q(sl2)`, with basis `b^i c^j d^l`
/// and `a = q^{-1} b c d^{-1} + d^{-1}` as a defined symbol.
pub fn oq_sl2_bar(n: u32, k: u32) -> Result<PresentedHopfAlgebra, HopfError> {
    let q = uq_root(n, k)?;
    let mut b = AlgebraBuilder::new(&format!("O_q(SL2)-bar, q = ζ_{n}^{k}"), n);
    b.var("q", q)
        .generator("b", n)
        .generator("c", n)
        .generator("d", n)
        .power("d", "1")
        .power("b", "0")
        .power("c", "0")
        .swap("c", "b", "b*c")
        .swap("d", "b", "q*b*d")
        .swap("d", "c", "q*c*d")
        .define("a", "q^-1*b*c*d^-1 + d^-1", "a ⊗ a + b ⊗ c")
        .delta_symbolic("b", "a ⊗ b + b ⊗ d")
        .delta_symbolic("c", "c ⊗ a + d ⊗ c")
        .delta_symbolic("d", "c ⊗ b + d ⊗ d")
        .counit("b", CycloNum::zero(n))
        .counit("c", CycloNum::zero(n))
        .counit("d", CycloNum::one(n))
        .antipode("b", "-q*b")
        .antipode("c", "-q^-1*c")
        .antipode("d", "a")
        .expected_dimension((n * n * n) as usize);
    b.build()
}
