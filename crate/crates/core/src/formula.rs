//! Small integer expression trees over the table parameters, with the standard order
//! formulas of the groups that occur in the tables.

use std::fmt;
use std::ops;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Var {
    N,
    M,
    Q,
    D,
    E,
}

impl Var {
    pub fn name(self) -> char {
        match self {
            Var::N => 'n',
            Var::M => 'm',
            Var::Q => 'q',
            Var::D => 'd',
            Var::E => 'e',
        }
    }
}

/// Group families with a closed order formula. Arguments are the dimension (or degree)
/// and the field size, except for `Sym`/`Alt` (degree only) and `G2` (field size only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Sym,
    Alt,
    GL,
    SL,
    PSL,
    PGL,
    PGammaL,
    Sp,
    PSp,
    PGSp,
    GU,
    SU,
    PSU,
    PGU,
    SO,
    Omega,
    SOPlus,
    OmegaPlus,
    PSOPlus,
    POmegaPlus,
    OmegaMinus,
    G2,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::Sym => "S",
            Family::Alt => "A",
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PSL => "PSL",
            Family::PGL => "PGL",
            Family::PGammaL => "PGammaL",
            Family::Sp => "Sp",
            Family::PSp => "PSp",
            Family::PGSp => "PGSp",
            Family::GU => "GU",
            Family::SU => "SU",
            Family::PSU => "PSU",
            Family::PGU => "PGU",
            Family::SO => "SO",
            Family::Omega => "Omega",
            Family::SOPlus => "SO+",
            Family::OmegaPlus => "Omega+",
            Family::PSOPlus => "PSO+",
            Family::POmegaPlus => "POmega+",
            Family::OmegaMinus => "Omega-",
            Family::G2 => "G2",
        }
    }
}

pub const SPORADIC_ORDERS: [(&str, u128); 9] = [
    ("M11", 7920),
    ("M12", 95040),
    ("M22", 443520),
    ("M23", 10200960),
    ("M24", 244823040),
    ("J2", 604800),
    ("HS", 44352000),
    ("He", 4030387200),
    ("Suz", 448345497600),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Expr {
    Int(u64),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Exact division; a nonzero remainder is an evaluation error.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Gcd(Box<Expr>, Box<Expr>),
    Mod(Box<Expr>, Box<Expr>),
    /// 1 if both sides agree, else 0.
    Eq(Box<Expr>, Box<Expr>),
    Order(Family, Vec<Expr>),
    Sporadic(&'static str),
}

pub fn int(x: u64) -> Expr {
    Expr::Int(x)
}

pub fn var(v: Var) -> Expr {
    Expr::Var(v)
}

pub fn n() -> Expr {
    var(Var::N)
}

pub fn m() -> Expr {
    var(Var::M)
}

pub fn q() -> Expr {
    var(Var::Q)
}

pub fn d() -> Expr {
    var(Var::D)
}

pub fn e() -> Expr {
    var(Var::E)
}

pub fn pow(a: Expr, b: impl Into<Expr>) -> Expr {
    Expr::Pow(Box::new(a), Box::new(b.into()))
}

pub fn gcd(a: impl Into<Expr>, b: impl Into<Expr>) -> Expr {
    Expr::Gcd(Box::new(a.into()), Box::new(b.into()))
}

pub fn modulo(a: Expr, b: impl Into<Expr>) -> Expr {
    Expr::Mod(Box::new(a), Box::new(b.into()))
}

pub fn eq(a: Expr, b: impl Into<Expr>) -> Expr {
    Expr::Eq(Box::new(a), Box::new(b.into()))
}

pub fn order(f: Family, args: &[Expr]) -> Expr {
    Expr::Order(f, args.to_vec())
}

pub fn sporadic(name: &'static str) -> Expr {
    Expr::Sporadic(name)
}

impl From<u64> for Expr {
    fn from(x: u64) -> Self {
        Expr::Int(x)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $v:ident) => {
        impl<T: Into<Expr>> ops::$tr<T> for Expr {
            type Output = Expr;
            fn $f(self, rhs: T) -> Expr {
                Expr::$v(Box::new(self), Box::new(rhs.into()))
            }
        }
        impl ops::$tr<Expr> for u64 {
            type Output = Expr;
            fn $f(self, rhs: Expr) -> Expr {
                Expr::$v(Box::new(Expr::Int(self)), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

/// Values of the parameters; unset ones are an evaluation error when used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Env {
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub q: Option<u64>,
    pub d: Option<u64>,
    pub e: Option<u64>,
}

impl Env {
    pub fn get(&self, v: Var) -> Option<u64> {
        match v {
            Var::N => self.n,
            Var::M => self.m,
            Var::Q => self.q,
            Var::D => self.d,
            Var::E => self.e,
        }
    }

    pub fn set(&mut self, v: Var, x: u64) {
        match v {
            Var::N => self.n = Some(x),
            Var::M => self.m = Some(x),
            Var::Q => self.q = Some(x),
            Var::D => self.d = Some(x),
            Var::E => self.e = Some(x),
        }
    }
}

fn small(x: &BigInt, what: &str) -> Result<u32> {
    x.to_u32().ok_or_else(|| Error::Param(format!("{what} out of range: {x}")))
}

fn big_pow(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

/// `(p, a)` with `q = p^a`.
fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::Param(format!("{q} is not a prime power")));
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
    let (mut r, mut a) = (q, 0);
    while r % p == 0 {
        r /= p;
        a += 1;
    }
    if r != 1 {
        return Err(Error::Param(format!("{q} is not a prime power")));
    }
    Ok((p, a))
}

fn prod(range: impl Iterator<Item = BigInt>) -> BigInt {
    range.fold(BigInt::one(), |a, b| a * b)
}

/// `|G|` for the family at the given dimension and field size.
pub fn family_order(f: Family, args: &[u32]) -> Result<BigInt> {
    let bad = || Error::Param(format!("bad arguments {args:?} for {}", f.label()));
    let two = BigInt::from(2u32);
    match f {
        Family::Sym | Family::Alt => {
            let &[n] = args else { return Err(bad()) };
            let fact = prod((1..=n).map(BigInt::from));
            Ok(if f == Family::Alt && n >= 2 { fact / 2 } else { fact })
        }
        Family::G2 => {
            let &[qq] = args else { return Err(bad()) };
            prime_power(qq)?;
            let q = BigInt::from(qq);
            Ok(big_pow(&q, 6) * (big_pow(&q, 6) - 1) * (big_pow(&q, 2) - 1))
        }
        _ => {
            let &[dim, qq] = args else { return Err(bad()) };
            let (_, a) = prime_power(qq)?;
            let q = BigInt::from(qq);
            let qi = |i: u32| big_pow(&q, i);
            let g2 = BigInt::from(if qq % 2 == 0 { 1u32 } else { 2 });
            let gl = |n: u32| qi(n * (n - 1) / 2) * prod((1..=n).map(|i| qi(i) - 1));
            let sp = |m: u32| qi(m * m) * prod((1..=m).map(|i| qi(2 * i) - 1));
            let gu = |n: u32| {
                qi(n * (n - 1) / 2) * prod((1..=n).map(|i| if i % 2 == 0 { qi(i) - 1 } else { qi(i) + 1 }))
            };
            let o_eps = |m: u32, plus: bool| {
                let top = if plus { qi(m) - 1 } else { qi(m) + 1 };
                &two * qi(m * (m - 1)) * top * prod((1..m).map(|i| qi(2 * i) - 1))
            };
            let even = |d: u32| if d.is_multiple_of(2) && d >= 2 { Ok(d / 2) } else { Err(bad()) };
            let odd = |d: u32| if d % 2 == 1 && d >= 3 { Ok(d / 2) } else { Err(bad()) };
            if dim == 0 {
                return Err(bad());
            }
            Ok(match f {
                Family::GL => gl(dim),
                Family::SL | Family::PGL => gl(dim) / (&q - 1),
                Family::PSL => gl(dim) / (&q - 1) / BigInt::from(dim).gcd(&(&q - 1)),
                Family::PGammaL => gl(dim) / (&q - 1) * a,
                Family::Sp | Family::PGSp => sp(even(dim)?),
                Family::PSp => sp(even(dim)?) / &g2,
                Family::GU => gu(dim),
                Family::SU | Family::PGU => gu(dim) / (&q + 1),
                Family::PSU => gu(dim) / (&q + 1) / BigInt::from(dim).gcd(&(&q + 1)),
                Family::SO => sp(odd(dim)?),
                Family::Omega => sp(odd(dim)?) / &g2,
                Family::SOPlus => o_eps(even(dim)?, true) / &g2,
                Family::OmegaPlus => o_eps(even(dim)?, true) / (&two * &g2),
                Family::PSOPlus => o_eps(even(dim)?, true) / (&g2 * &g2),
                Family::POmegaPlus => {
                    let m = even(dim)?;
                    let z = BigInt::from(4u32).gcd(&(qi(m) - 1));
                    o_eps(m, true) / (&two * &g2) * &g2 / z
                }
                Family::OmegaMinus => o_eps(even(dim)?, false) / (&two * &g2),
                Family::Sym | Family::Alt | Family::G2 => unreachable!(),
            })
        }
    }
}

impl Expr {
    pub fn eval_big(&self, env: &Env) -> Result<BigInt> {
        let bin = |a: &Expr, b: &Expr| -> Result<(BigInt, BigInt)> { Ok((a.eval_big(env)?, b.eval_big(env)?)) };
        Ok(match self {
            Expr::Int(x) => BigInt::from(*x),
            Expr::Var(v) => BigInt::from(env.get(*v).ok_or_else(|| Error::Param(format!("parameter {} is not set", v.name())))?),
            Expr::Add(a, b) => {
                let (x, y) = bin(a, b)?;
                x + y
            }
            Expr::Sub(a, b) => {
                let (x, y) = bin(a, b)?;
                x - y
            }
            Expr::Mul(a, b) => {
                let (x, y) = bin(a, b)?;
                x * y
            }
            Expr::Div(a, b) => {
                let (x, y) = bin(a, b)?;
                if y.is_zero() || !(&x % &y).is_zero() {
                    return Err(Error::Param(format!("{x} is not divisible by {y} in {self}")));
                }
                x / y
            }
            Expr::Pow(a, b) => {
                let (x, y) = bin(a, b)?;
                big_pow(&x, small(&y, "exponent")?)
            }
            Expr::Gcd(a, b) => {
                let (x, y) = bin(a, b)?;
                x.gcd(&y)
            }
            Expr::Mod(a, b) => {
                let (x, y) = bin(a, b)?;
                if y.is_zero() {
                    return Err(Error::Param(format!("zero modulus in {self}")));
                }
                x.mod_floor(&y)
            }
            Expr::Eq(a, b) => {
                let (x, y) = bin(a, b)?;
                BigInt::from((x == y) as u32)
            }
            Expr::Order(f, args) => {
                let mut v = Vec::with_capacity(args.len());
                for a in args {
                    v.push(small(&a.eval_big(env)?, "group argument")?);
                }
                family_order(*f, &v)?
            }
            Expr::Sporadic(name) => {
                let (_, o) = SPORADIC_ORDERS
                    .iter()
                    .find(|(s, _)| s == name)
                    .ok_or_else(|| Error::Param(format!("unknown sporadic group {name}")))?;
                BigInt::from(*o)
            }
        })
    }

    /// Positive value as an unsigned big integer.
    pub fn eval_positive(&self, env: &Env) -> Result<BigUint> {
        let x = self.eval_big(env)?;
        if !x.is_positive() {
            return Err(Error::Param(format!("{self} evaluates to {x}, not a positive integer")));
        }
        Ok(x.to_biguint().unwrap())
    }

    pub fn eval(&self, env: &Env) -> Result<u128> {
        let x = self.eval_positive(env)?;
        x.to_u128().ok_or_else(|| Error::Cap(format!("{self} = {x} exceeds 128 bits")))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) | Expr::Mod(..) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            write!(f, "(")?;
        }
        match self {
            Expr::Int(x) => write!(f, "{x}")?,
            Expr::Var(v) => write!(f, "{}", v.name())?,
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "+")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "-")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) | Expr::Mod(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "{}", if matches!(self, Expr::Div(..)) { "/" } else { " mod " })?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Pow(a, b) => {
                a.fmt_prec(f, 4)?;
                write!(f, "^")?;
                b.fmt_prec(f, 4)?;
            }
            Expr::Gcd(a, b) => write!(f, "gcd({a},{b})")?,
            Expr::Eq(a, b) => write!(f, "[{a}={b}]")?,
            Expr::Order(fam, args) => {
                let a: Vec<String> = args.iter().map(|x| x.to_string()).collect();
                match fam {
                    Family::Sym | Family::Alt => write!(f, "|{}{}|", fam.label(), a.join(","))?,
                    Family::G2 => write!(f, "|G2({})|", a.join(","))?,
                    _ => write!(f, "|{}_{}({})|", fam.label(), a[0], a[1..].join(","))?,
                }
            }
            Expr::Sporadic(s) => write!(f, "|{s}|")?,
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(f: Family, a: &[u32]) -> String {
        family_order(f, a).unwrap().to_string()
    }

    #[test]
    fn classical_orders() {
        assert_eq!(ord(Family::PSL, &[2, 11]), "660");
        assert_eq!(ord(Family::PGL, &[4, 3]), "12130560");
        assert_eq!(ord(Family::PGammaL, &[4, 4]), "1974067200");
        assert_eq!(ord(Family::PSp, &[4, 3]), "25920");
        assert_eq!(ord(Family::Sp, &[6, 2]), "1451520");
        assert_eq!(ord(Family::PSU, &[4, 3]), "3265920");
        assert_eq!(ord(Family::PSU, &[3, 8]), "5515776");
        assert_eq!(ord(Family::PGU, &[4, 3]), "13063680");
        assert_eq!(ord(Family::Omega, &[7, 3]), "4585351680");
        assert_eq!(ord(Family::OmegaPlus, &[8, 2]), "174182400");
        assert_eq!(ord(Family::POmegaPlus, &[8, 3]), "4952179814400");
        assert_eq!(ord(Family::OmegaMinus, &[8, 3]), "10151968619520");
        assert_eq!(ord(Family::G2, &[3]), "4245696");
        assert_eq!(ord(Family::Alt, &[8]), "20160");
    }

    #[test]
    fn evaluation_and_printing() {
        let ell = pow(q(), 3) * (pow(q(), 3) - 1u64) / gcd(2u64, q() - 1u64);
        let env = Env { q: Some(3), ..Env::default() };
        assert_eq!(ell.eval(&env).unwrap(), 351);
        assert_eq!(ell.to_string(), "q^3*(q^3-1)/gcd(2,q-1)");
        assert!((q() / 2u64).eval(&env).is_err());
        assert!(n().eval(&env).is_err());
    }
}
