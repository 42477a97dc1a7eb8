//! Stand-alone reference for the one-variable family `x^n`.
//!
//! Uses its own series type and solves the fixed point
//! `zeta = [dx] - P_{>=0}((E - 1) zeta)` with `E = exp((F - f)/z)`, then takes
//! flat coordinates from `z^-1`, inverts them and integrates `F_0` with the
//! Euler identity `d F^(d) = sum t_a d_a F^(d)` instead of term matching.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Ser = HashMap<Vec<u32>, BigRational>;
/// `(z-power, basis index) -> coefficient series`.
pub type Class = BTreeMap<(i32, usize), Ser>;

pub struct Oracle {
    pub n: u32,
    pub order: u32,
    pub zeta: Class,
    pub j: Class,
    pub t_of_s: Vec<Ser>,
    pub s_of_t: Vec<Ser>,
    pub f0: Ser,
}

fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn add_into(a: &mut Ser, m: Vec<u32>, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = a.entry(m.clone()).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        a.remove(&m);
    }
}

fn mul(a: &Ser, b: &Ser, order: u32) -> Ser {
    let mut out = Ser::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            if deg(&m) <= order {
                add_into(&mut out, m, ca * cb);
            }
        }
    }
    out
}

fn var(mu: usize, i: usize) -> Ser {
    let mut m = vec![0; mu];
    m[i] = 1;
    Ser::from([(m, BigRational::one())])
}

fn one(mu: usize) -> Ser {
    Ser::from([(vec![0; mu], BigRational::one())])
}

fn add_scaled(a: &mut Ser, b: &Ser, c: &BigRational) {
    for (m, v) in b {
        add_into(a, m.clone(), v * c);
    }
}

fn compose(a: &Ser, subs: &[Ser], order: u32) -> Ser {
    let mu = subs.len();
    let mut powers: Vec<Vec<Ser>> = subs.iter().map(|s| vec![one(mu), s.clone()]).collect();
    let mut out = Ser::new();
    for (m, c) in a {
        let mut acc = one(mu);
        for (i, &k) in m.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = mul(powers[i].last().unwrap(), &subs[i], order);
                powers[i].push(next);
            }
            acc = mul(&acc, &powers[i][k as usize], order);
        }
        add_scaled(&mut out, &acc, c);
    }
    out
}

/// `[x^k dx]` as `(z shift, index, coefficient)`; `None` when it vanishes.
fn reduce(k: u32, n: u32) -> Option<(i32, usize, BigRational)> {
    if k + 2 <= n {
        return Some((0, k as usize, BigRational::one()));
    }
    if k + 1 == n {
        return None;
    }
    // x^k dx = (1/n) x^(k-n+1) df  ~  -z (k-n+1)/n x^(k-n) dx
    let c = -BigRational::new(BigInt::from(k + 1 - n), BigInt::from(n));
    reduce(k - n, n).map(|(j, i, d)| (j + 1, i, d * c))
}

impl Oracle {
    pub fn new(n: u32, order: u32) -> Self {
        assert!(n >= 3);
        let mu = (n - 1) as usize;
        // (F - f)^m / m! as polynomials in x with series coefficients.
        let mut powers: Vec<BTreeMap<u32, Ser>> = vec![BTreeMap::from([(0, one(mu))])];
        for m in 1..=order {
            let prev = &powers[m as usize - 1];
            let mut next: BTreeMap<u32, Ser> = BTreeMap::new();
            for (&i, c) in prev {
                for a in 0..mu {
                    let term = mul(c, &var(mu, a), order);
                    let slot = next.entry(i + a as u32).or_default();
                    add_scaled(slot, &term, &BigRational::new(BigInt::one(), BigInt::from(m)));
                }
            }
            powers.push(next);
        }
        let apply_minus_one = |zeta: &Class| -> Class {
            let mut out = Class::new();
            for (&(j, k), c) in zeta {
                for (m, p) in powers.iter().enumerate().skip(1) {
                    for (&i, pc) in p {
                        if let Some((shift, idx, r)) = reduce(i + k as u32, n) {
                            let slot = out.entry((j - m as i32 + shift, idx)).or_default();
                            add_scaled(slot, &mul(c, pc, order), &r);
                        }
                    }
                }
            }
            out
        };
        let unit: Class = Class::from([((0, 0), one(mu))]);
        let mut zeta = unit.clone();
        for _ in 0..=order {
            let mut next = unit.clone();
            for (&(j, k), c) in &apply_minus_one(&zeta) {
                if j >= 0 {
                    add_scaled(next.entry((j, k)).or_default(), c, &-BigRational::one());
                }
            }
            next.retain(|_, v| !v.is_empty());
            zeta = next;
        }
        let mut j = Class::new();
        for (&(zp, k), c) in &apply_minus_one(&zeta) {
            if zp < 0 {
                add_scaled(j.entry((zp, k)).or_default(), c, &BigRational::one());
            } else {
                // Non-negative part of E zeta must be exactly [dx].
                let mut want = c.clone();
                if let Some(z) = zeta.get(&(zp, k)) {
                    add_scaled(&mut want, z, &BigRational::one());
                }
                let target = if (zp, k) == (0, 0) { one(mu) } else { Ser::new() };
                assert_eq!(want, target, "normalization fails at z^{zp}, x^{k}");
            }
        }
        // J = E zeta, whose non-negative part is the unit form.
        j.insert((0, 0), one(mu));
        j.retain(|_, v| !v.is_empty());

        let comp = |zp: i32, a: usize| j.get(&(zp, a)).cloned().unwrap_or_default();
        let t_of_s: Vec<Ser> = (0..mu).map(|a| comp(-1, a)).collect();
        for (a, t) in t_of_s.iter().enumerate() {
            let lin: Ser = t.iter().filter(|(m, _)| deg(m) <= 1).map(|(m, c)| (m.clone(), c.clone())).collect();
            assert_eq!(lin, var(mu, a));
        }
        let mut s_of_t: Vec<Ser> = (0..mu).map(|a| var(mu, a)).collect();
        for _ in 0..order {
            s_of_t = (0..mu)
                .map(|a| {
                    let higher: Ser = t_of_s[a]
                        .iter()
                        .filter(|(m, _)| deg(m) >= 2)
                        .map(|(m, c)| (m.clone(), c.clone()))
                        .collect();
                    let mut s = var(mu, a);
                    add_scaled(&mut s, &compose(&higher, &s_of_t, order), &-BigRational::one());
                    s
                })
                .collect();
        }

        // eta(x^a, x^b) = 1/n when a + b = n - 2.
        let eta = BigRational::new(BigInt::one(), BigInt::from(n));
        let grad: Vec<Ser> = (0..mu)
            .map(|a| {
                let mut g = compose(&comp(-2, mu - 1 - a), &s_of_t, order.saturating_sub(1));
                g.retain(|m, _| deg(m) < order);
                g.values_mut().for_each(|c| *c *= &eta);
                g
            })
            .collect();
        let mut f0 = Ser::new();
        for d in 3..=order {
            let mut part = Ser::new();
            for (a, g) in grad.iter().enumerate() {
                for (m, c) in g.iter().filter(|(m, _)| deg(m) + 1 == d) {
                    let mut m = m.clone();
                    m[a] += 1;
                    add_into(&mut part, m, c / BigRational::from_integer(BigInt::from(d)));
                }
            }
            // The Euler reconstruction only works if grad is a gradient.
            for (a, g) in grad.iter().enumerate() {
                let mut da = Ser::new();
                for (m, c) in &part {
                    if m[a] > 0 {
                        let mut m2 = m.clone();
                        m2[a] -= 1;
                        add_into(&mut da, m2, c * BigRational::from_integer(BigInt::from(m[a])));
                    }
                }
                let gd: Ser = g.iter().filter(|(m, _)| deg(m) + 1 == d).map(|(m, c)| (m.clone(), c.clone())).collect();
                assert_eq!(da, gd, "not a gradient at degree {d}");
            }
            for (m, c) in part {
                add_into(&mut f0, m, c);
            }
        }
        Oracle { n, order, zeta, j, t_of_s, s_of_t, f0 }
    }
}
