//! Standard group families and the textual selector grammar
//! (`cyclic:6`, `dihedral:4`, `sym:4`, `alt:5`, `quaternion:8`, `elab:2^3`,
//! `prod(sym:3,cyclic:2)`, `trivial`).

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::numtheory::is_prime;
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Generalised quaternion group of the given order (a power of 2, at least 8).
    Quaternion(usize),
    ElemAbelian { p: usize, k: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Symmetric(n) => write!(f, "sym:{n}"),
            Family::Alternating(n) => write!(f, "alt:{n}"),
            Family::Quaternion(n) => write!(f, "quaternion:{n}"),
            Family::ElemAbelian { p, k } => write!(f, "elab:{p}^{k}"),
        }
    }
}

impl Family {
    /// The order of the group, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match *self {
            Family::Cyclic(n) => Some(n),
            Family::Dihedral(n) => n.checked_mul(2),
            Family::Symmetric(n) => (1..=n).try_fold(1usize, |a, b| a.checked_mul(b)),
            Family::Alternating(n) => {
                let f = (1..=n).try_fold(1usize, |a, b| a.checked_mul(b))?;
                Some(if n >= 2 { f / 2 } else { f })
            }
            Family::Quaternion(n) => Some(n),
            Family::ElemAbelian { p, k } => p.checked_pow(k as u32),
        }
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        let order = self.order().unwrap_or(usize::MAX);
        if order > cap {
            return Err(Error::OrderCapExceeded { order, cap });
        }
        let g = match *self {
            Family::Cyclic(n) => cyclic(n)?,
            Family::Dihedral(n) => dihedral(n)?,
            Family::Symmetric(n) => symmetric(n, cap)?,
            Family::Alternating(n) => alternating(n, cap)?,
            Family::Quaternion(n) => quaternion(n)?,
            Family::ElemAbelian { p, k } => elementary_abelian(p, k)?,
        };
        Ok(g.with_order_cap(cap))
    }
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidSelector("cyclic:0".into()));
    }
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    Ok(Group::from_table_unchecked(n, table, format!("C{n}"), n.max(crate::group::DEFAULT_ORDER_CAP)))
}

/// `r^i s^j` has index `i + n j`; `s r s^-1 = r^-1`.
pub fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidSelector("dihedral:0".into()));
    }
    let order = 2 * n;
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (a, b) = (x % n, x / n);
        for y in 0..order {
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            table[x * order + y] = (rot + n * ((b + d) % 2)) as u32;
        }
    }
    Ok(Group::from_table_unchecked(order, table, format!("D{n}"), order.max(crate::group::DEFAULT_ORDER_CAP)))
}

pub fn symmetric(n: usize, cap: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidSelector("sym:0".into()));
    }
    let degree = n;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(degree, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(Perm::from_cycles(degree, &[(0..n).collect()])?);
    }
    Ok(Group::from_permutation_gens(degree, &gens, cap)?.with_label(format!("S{n}")))
}

pub fn alternating(n: usize, cap: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidSelector("alt:0".into()));
    }
    let gens = (2..n)
        .map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Group::from_permutation_gens(n, &gens, cap)?.with_label(format!("A{n}")))
}

/// `a^i b^j` has index `i + 2m j` where the order is `4m`; `b^2 = a^m`,
/// `b a b^-1 = a^-1`.
pub fn quaternion(order: usize) -> Result<Group> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::InvalidSelector(format!("quaternion:{order}")));
    }
    let m = order / 4;
    let half = 2 * m;
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (i, j) = (x % half, x / half);
        for y in 0..order {
            let (k, l) = (y % half, y / half);
            let idx = if j == 0 {
                (i + k) % half + half * l
            } else {
                let rot = (i + half - k) % half;
                if l == 0 {
                    rot + half
                } else {
                    (rot + m) % half
                }
            };
            table[x * order + y] = idx as u32;
        }
    }
    Ok(Group::from_table_unchecked(order, table, format!("Q{order}"), order.max(crate::group::DEFAULT_ORDER_CAP)))
}

/// Vectors over `F_p` of length `k`, indexed by their base-`p` digits.
pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidSelector(format!("elab:{p}^{k}")));
    }
    let order = p.checked_pow(k as u32).ok_or_else(|| Error::InvalidSelector(format!("elab:{p}^{k}")))?;
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        for y in 0..order {
            let (mut a, mut b, mut out, mut place) = (x, y, 0, 1);
            for _ in 0..k {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            table[x * order + y] = out as u32;
        }
    }
    let label = if k == 1 { format!("C{p}") } else { format!("C{p}^{k}") };
    Ok(Group::from_table_unchecked(order, table, label, order.max(crate::group::DEFAULT_ORDER_CAP)))
}

/// A parsed group selector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Trivial,
    Family(Family),
    Product(Box<Selector>, Box<Selector>),
}

impl Selector {
    pub fn parse(s: &str) -> Result<Selector> {
        let s = s.trim();
        let bad = || Error::InvalidSelector(s.to_string());
        if s == "trivial" {
            return Ok(Selector::Trivial);
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0i32;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(bad)?;
            return Ok(Selector::Product(
                Box::new(Selector::parse(&inner[..i])?),
                Box::new(Selector::parse(&inner[i + 1..])?),
            ));
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let family = match kind.trim() {
            "cyclic" => Family::Cyclic(num(arg)?),
            "dihedral" => Family::Dihedral(num(arg)?),
            "sym" => Family::Symmetric(num(arg)?),
            "alt" => Family::Alternating(num(arg)?),
            "quaternion" => Family::Quaternion(num(arg)?),
            "elab" => {
                let (p, k) = arg.split_once('^').ok_or_else(bad)?;
                let (p, k) = (num(p)?, num(k)?);
                if !is_prime(p as u64) || k == 0 {
                    return Err(bad());
                }
                Family::ElemAbelian { p, k }
            }
            _ => return Err(bad()),
        };
        match family {
            Family::Cyclic(0) | Family::Dihedral(0) | Family::Symmetric(0) | Family::Alternating(0) => Err(bad()),
            Family::Quaternion(n) if n < 8 || !n.is_power_of_two() => Err(bad()),
            f => Ok(Selector::Family(f)),
        }
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        match self {
            Selector::Trivial => Ok(Group::trivial().with_order_cap(cap)),
            Selector::Family(f) => f.build(cap),
            Selector::Product(a, b) => {
                let (a, b) = (a.build(cap)?, b.build(cap)?);
                let order = a.order() * b.order();
                if order > cap {
                    return Err(Error::OrderCapExceeded { order, cap });
                }
                Ok(a.direct_product(&b)?.with_order_cap(cap))
            }
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Trivial => write!(f, "trivial"),
            Selector::Family(x) => write!(f, "{x}"),
            Selector::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn involutions(g: &Group) -> usize {
        (1..g.order()).filter(|&x| g.element_order(x) == 2).count()
    }

    #[test]
    fn family_orders_and_axioms() {
        for (sel, order) in [
            ("cyclic:1", 1),
            ("cyclic:7", 7),
            ("dihedral:1", 2),
            ("dihedral:2", 4),
            ("dihedral:5", 10),
            ("sym:1", 1),
            ("sym:2", 2),
            ("sym:4", 24),
            ("alt:3", 3),
            ("alt:4", 12),
            ("alt:5", 60),
            ("quaternion:8", 8),
            ("quaternion:16", 16),
            ("elab:2^3", 8),
            ("elab:3^2", 9),
            ("prod(sym:3,cyclic:2)", 12),
        ] {
            let g = Selector::parse(sel).unwrap().build(512).unwrap();
            assert_eq!(g.order(), order, "{sel}");
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        assert_eq!(involutions(&quaternion(8).unwrap()), 1);
        assert_eq!(involutions(&quaternion(16).unwrap()), 1);
        assert_eq!(involutions(&dihedral(4).unwrap()), 5);
    }

    #[test]
    fn products() {
        let c2 = cyclic(2).unwrap();
        let v = c2.direct_product(&c2).unwrap();
        assert_eq!(involutions(&v), 3);
        let c6 = c2.direct_product(&cyclic(3).unwrap()).unwrap();
        assert!((0..6).any(|x| c6.element_order(x) == 6));
        let g = symmetric(3, 512).unwrap();
        assert_eq!(g.direct_product(&Group::trivial()).unwrap().order(), 6);
    }

    #[test]
    fn selector_errors() {
        for bad in ["", "cyclic", "cyclic:0", "elab:4^2", "quaternion:12", "prod(sym:3)", "foo:3"] {
            assert!(Selector::parse(bad).is_err(), "{bad}");
        }
        assert!(matches!(
            Selector::parse("sym:6").unwrap().build(512),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert_eq!(Selector::parse("prod(sym:3,prod(cyclic:2,cyclic:2))").unwrap().to_string(), "prod(sym:3,prod(cyclic:2,cyclic:2))");
    }
}
