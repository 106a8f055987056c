use std::collections::BTreeMap;

use super::ring::{Monomial, RingSpec};
use crate::exactfield::Scalar;

/// Element of a [`RingSpec`], stored as normal-form terms in descending monomial order
/// with nonzero coefficients. The ring is passed to every operation rather than stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &RingSpec, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &RingSpec) -> Self {
        Self::constant(ring, ring.field().one())
    }

    /// `c · m`, reduced to normal form.
    pub fn term(ring: &RingSpec, m: Monomial, c: Scalar) -> Self {
        if ring.field().is_zero(&c) || !ring.is_normal(m.exponents()) {
            return Self::zero();
        }
        Polynomial {
            terms: vec![(m, c)],
        }
    }

    pub fn monomial(ring: &RingSpec, m: Monomial) -> Self {
        Self::term(ring, m, ring.field().one())
    }

    /// `sign · x_i^e`.
    pub fn var_power(ring: &RingSpec, i: usize, e: u32, sign: i64) -> Self {
        let mut exps = vec![0; ring.nvars()];
        exps[i] = e;
        Self::term(ring, Monomial::new(exps), ring.field().from_i64(sign))
    }

    pub fn var(ring: &RingSpec, i: usize) -> Self {
        Self::var_power(ring, i, 1, 1)
    }

    /// Builds a polynomial from terms with coefficients already in the ring's field,
    /// combining and reducing them.
    pub fn from_terms(
        ring: &RingSpec,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let f = ring.field();
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if !ring.is_normal(m.exponents()) {
                continue;
            }
            match acc.get_mut(&m) {
                Some(old) => *old = f.add(old, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !f.is_zero(c))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(degree)
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, ring: &RingSpec, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(|| ring.field().zero(), |(_, c)| c.clone())
    }

    /// The constant coefficient when the polynomial is a nonzero constant.
    pub fn as_unit(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.degree() == 0 => Some(c),
            _ => None,
        }
    }

    pub fn add(&self, ring: &RingSpec, other: &Polynomial) -> Polynomial {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let f = ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Greater => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Less => {
                        out.push((mb.clone(), cb.clone()));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let c = f.add(ca, cb);
                        if !f.is_zero(&c) {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(t), None) => {
                    out.push((*t).clone());
                    a.next();
                }
                (None, Some(t)) => {
                    out.push((*t).clone());
                    b.next();
                }
                (None, None) => break,
            }
        }
        Polynomial { terms: out }
    }

    pub fn neg(&self, ring: &RingSpec) -> Polynomial {
        let f = ring.field();
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &RingSpec, other: &Polynomial) -> Polynomial {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &RingSpec, c: &Scalar) -> Polynomial {
        let f = ring.field();
        if f.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, t)| (m.clone(), f.mul(t, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &RingSpec, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let f = ring.field();
        Polynomial::from_terms(
            ring,
            self.terms.iter().flat_map(|(ma, ca)| {
                other
                    .terms
                    .iter()
                    .map(move |(mb, cb)| (ma.mul(mb), f.mul(ca, cb)))
            }),
        )
    }

    pub fn pow(&self, ring: &RingSpec, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(ring);
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Reinterprets the polynomial in a ring with the same variables and field
    /// (dropping terms that the target relations kill).
    pub fn reduce_into(&self, ring: &RingSpec) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    /// Renders with the ring's variable names, e.g. `y*z + 2*v^2`.
    pub fn to_string_in(&self, ring: &RingSpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = ring.field();
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = match c {
                Scalar::Rat(r) if r < &num_rational::BigRational::from_integer(0.into()) => {
                    (true, Scalar::Rat(-r))
                }
                _ => (false, c.clone()),
            };
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mono = ring.fmt_monomial(m);
            if f.is_one(&mag) {
                s.push_str(&mono);
            } else if mono == "1" {
                s.push_str(&mag.to_string());
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}
