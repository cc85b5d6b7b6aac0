use crate::cyclotomic::CycloNum;
use crate::hopf::{AlgebraBuilder, HopfError, PresentedHopfAlgebra};

use super::{Family, HnParams};

/// A Drinfeld double presented as printed: generators of `H^*` first, then
/// those of `H`, reordering rules `(H-generator)(dual generator) = …`, and
/// the printed relations as `"lhs = rhs"` strings over `vars`.
pub struct DoubleFixture {
    pub presentation: PresentedHopfAlgebra,
    pub relations: Vec<String>,
    pub vars: Vec<(String, CycloNum)>,
}

impl DoubleFixture {
    pub fn scope_vars(&self) -> Vec<(&str, CycloNum)> {
        self.vars.iter().map(|(n, v)| (n.as_str(), v.clone())).collect()
    }

    /// Whether a relation is listed, ignoring whitespace.
    pub fn contains_relation(&self, rel: &str) -> bool {
        let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let want = squash(rel);
        self.relations.iter().any(|r| squash(r) == want)
    }
}

fn relations(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Shared shape of `D(T_n(q))` and `D(H_n(ζ,m,t))`; `names` is `[X, Y, x, y]`.
fn hn_double(p: &HnParams, names: [&str; 4], name: &str) -> Result<(PresentedHopfAlgebra, Vec<(String, CycloNum)>), HopfError> {
    let [bx, by, x, y] = names;
    let (n, big_n, m, t) = (p.n, p.big_n(), p.m, p.t);
    let mut b = AlgebraBuilder::new(name, n);
    b.var("zeta", p.zeta())
        .var("q", p.q())
        .generator(bx, big_n)
        .generator(by, n)
        .generator(x, big_n)
        .generator(y, n)
        .power(by, "1")
        .power(bx, "0")
        .power(y, "1")
        .power(x, "0")
        .swap(by, bx, &format!("zeta^{m}*{bx}*{by}"))
        .swap(y, x, &format!("zeta^{t}*{x}*{y}"))
        .swap(y, by, &format!("{by}*{y}"))
        .swap(x, by, &format!("zeta^{m}*{by}*{x}"))
        .swap(y, bx, &format!("zeta^-{t}*{bx}*{y}"))
        .swap(x, bx, &format!("{bx}*{x} + {by}^{t} - {y}^{m}"))
        .grouplike(by)
        .grouplike(y)
        .skew_primitive(bx, "1", &format!("{by}^{t}"))
        .skew_primitive(x, &format!("{y}^{m}"), "1")
        .expected_dimension((big_n * n * big_n * n) as usize);
    let vars = vec![("zeta".to_string(), p.zeta()), ("q".to_string(), p.q())];
    Ok((b.build()?, vars))
}

fn taft_fixture(n: u32, k: u32) -> Result<DoubleFixture, HopfError> {
    let p = HnParams::new(n, k, 1, 1)?;
    let (presentation, vars) = hn_double(&p, ["X", "G", "x", "g"], &format!("D(T_{n}(ζ_{n}^{k})) as printed"))?;
    let relations = vec![
        format!("g^{n} = 1"),
        format!("G^{n} = 1"),
        format!("x^{n} = 0"),
        format!("X^{n} = 0"),
        "g*x = q*x*g".into(),
        "G*X = q*X*G".into(),
        "g*G = G*g".into(),
        "x*G = q*G*x".into(),
        "g*X = q^-1*X*g".into(),
        "x*X = X*x + G - g".into(),
    ];
    Ok(DoubleFixture { presentation, relations, vars })
}

fn hnzmt_fixture(p: &HnParams) -> Result<DoubleFixture, HopfError> {
    let (presentation, vars) = hn_double(p, ["X", "Y", "x", "y"], &format!("D({}) as printed", p.label()))?;
    let (n, big_n, m, t) = (p.n, p.big_n(), p.m, p.t);
    let relations = vec![
        format!("y^{n} = 1"),
        format!("Y^{n} = 1"),
        format!("x^{big_n} = 0"),
        format!("X^{big_n} = 0"),
        format!("y*x = zeta^{t}*x*y"),
        format!("Y*X = zeta^{m}*X*Y"),
        "y*Y = Y*y".into(),
        format!("x*Y = zeta^{m}*Y*x"),
        format!("y*X = zeta^-{t}*X*y"),
        format!("x*X - X*x = Y^{t} - y^{m}"),
    ];
    Ok(DoubleFixture { presentation, relations, vars })
}

fn t421_fixture(k: u32) -> Result<DoubleFixture, HopfError> {
    let zeta = CycloNum::root_of_unity(4, k as i64);
    let mut b = AlgebraBuilder::new("D(T(4,2,1)) as printed", 4);
    b.var("zeta", zeta.clone())
        .generator("X", 2)
        .generator("G", 4)
        .generator("x", 2)
        .generator("g", 4)
        .power("G", "1")
        .power("X", "0")
        .power("g", "1")
        .power("x", "g^2 - 1")
        .swap("G", "X", "zeta*X*G")
        .swap("g", "x", "-x*g")
        .swap("g", "G", "G*g")
        .swap("g", "X", "-X*g")
        .swap("x", "X", "X*x + G^2 - g")
        // As printed, the tail reads 2XG(ζg − G²), which is not associative.
        .swap("x", "G", "zeta*G*x - 2*X*G*g - 2*X*G^3")
        .delta("G", "G ⊗ G - 2*X*G ⊗ X*G^3")
        .counit("G", CycloNum::one(4))
        .antipode("G", "G^3")
        .skew_primitive("X", "1", "G^2")
        .grouplike("g")
        .skew_primitive("x", "g", "1")
        .expected_dimension(64);
    let relations = relations(&[
        "G^4 = 1",
        "g^4 = 1",
        "x^2 = g^2 - 1",
        "X^2 = 0",
        "g*x = -x*g",
        "G*X = zeta*X*G",
        "g*G = G*g",
        "g*X = -X*g",
        "x*X - X*x = G^2 - g",
        "x*G - zeta*G*x = -2*X*G*(g + G^2)",
    ]);
    Ok(DoubleFixture { presentation: b.build()?, relations, vars: vec![("zeta".into(), zeta)] })
}

fn uq_fixture(n: u32, k: u32) -> Result<DoubleFixture, HopfError> {
    let q = CycloNum::root_of_unity(n, k as i64);
    let mut b = AlgebraBuilder::new(&format!("D(u_q(sl2)), q = ζ_{n}^{k}, as printed"), n);
    b.var("q", q.clone())
        .generator("b", n)
        .generator("c", n)
        .generator("d", n)
        .generator("E", n)
        .generator("F", n)
        .generator("K", n)
        .power("d", "1")
        .power("b", "0")
        .power("c", "0")
        .power("K", "1")
        .power("E", "0")
        .power("F", "0")
        .swap("c", "b", "b*c")
        .swap("d", "b", "q*b*d")
        .swap("d", "c", "q*c*d")
        .define("a", "q^-1*b*c*d^-1 + d^-1", "a ⊗ a + c ⊗ b")
        .swap("K", "E", "q^2*E*K")
        .swap("K", "F", "q^-2*F*K")
        .swap("F", "E", "E*F - (K - K^-1)/(q - q^-1)")
        .swap("K", "b", "q^-2*b*K")
        .swap("K", "c", "q^2*c*K")
        .swap("K", "d", "d*K")
        .swap("E", "b", "q^-1*b*E + q^-1*a*K - q^-1*d")
        .swap("E", "c", "q*c*E")
        .swap("E", "d", "q*d*E + q*c*K")
        .swap("F", "b", "q*b*F")
        .swap("F", "c", "q^-1*c*F - a*K^-1 + d")
        .swap("F", "d", "q*d*F - q^2*b*K^-1")
        .delta_symbolic("b", "b ⊗ a + d ⊗ b")
        .delta_symbolic("c", "a ⊗ c + c ⊗ d")
        .delta_symbolic("d", "b ⊗ c + d ⊗ d")
        .counit("b", CycloNum::zero(n))
        .counit("c", CycloNum::zero(n))
        .counit("d", CycloNum::one(n))
        .antipode("b", "-q^-1*b")
        .antipode("c", "-q*c")
        .antipode("d", "a")
        .grouplike("K")
        .skew_primitive("E", "1", "K")
        .skew_primitive("F", "K^-1", "1")
        .expected_dimension((n as usize).pow(6));
    let relations = vec![
        format!("a^{n} = 1"),
        format!("d^{n} = 1"),
        format!("K^{n} = 1"),
        format!("b^{n} = 0"),
        format!("c^{n} = 0"),
        format!("E^{n} = 0"),
        format!("F^{n} = 0"),
        "b*a = q*a*b".into(),
        "d*b = q*b*d".into(),
        "c*a = q*a*c".into(),
        "d*c = q*c*d".into(),
        "b*c = c*b".into(),
        "a*d = q^-1*b*c + 1".into(),
        "K*E = q^2*E*K".into(),
        "K*F = q^-2*F*K".into(),
        "E*F - F*E = (K - K^-1)/(q - q^-1)".into(),
        "K*a = a*K".into(),
        "K*b = q^-2*b*K".into(),
        "K*c = q^2*c*K".into(),
        "K*d = d*K".into(),
        "E*a = q^-1*a*E - q^-1*c".into(),
        "E*b = q^-1*b*E + q^-1*a*K - q^-1*d".into(),
        "E*c = q*c*E".into(),
        "E*d = q*d*E + q*c*K".into(),
        "F*a = q^-1*a*F + b".into(),
        "F*b = q*b*F".into(),
        "F*c = q^-1*c*F - a*K^-1 + d".into(),
        "F*d = q*d*F - q^2*b*K^-1".into(),
    ];
    Ok(DoubleFixture { presentation: b.build()?, relations, vars: vec![("q".into(), q)] })
}

/// The double of a catalog algebra in the form printed in the literature.
pub fn paper_double_presentation(family: &Family) -> Result<DoubleFixture, HopfError> {
    match *family {
        Family::Taft { n, k } => taft_fixture(n, k),
        Family::Hnzmt(p) => hnzmt_fixture(&p),
        Family::T421 { k } => t421_fixture(k),
        Family::Uq { n, k } => uq_fixture(n, k),
        Family::GenTaft { .. } => Err(HopfError::Invalid("no printed double for T(n,N,α)".into())),
    }
}
