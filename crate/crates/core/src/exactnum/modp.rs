//! Dense polynomials over a prime field `F_p` with `p < 2^31`.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

pub(crate) type Poly = Vec<u64>;

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Fp { p }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, mut f: Poly) -> Poly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn deg(f: &Poly) -> Option<usize> {
        f.len().checked_sub(1)
    }

    #[cfg(test)]
    pub fn poly_add(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.len().max(g.len());
        let out = (0..n)
            .map(|i| (f.get(i).unwrap_or(&0) + g.get(i).unwrap_or(&0)) % self.p)
            .collect();
        self.trim(out)
    }

    pub fn poly_sub(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.len().max(g.len());
        let out = (0..n)
            .map(|i| self.sub(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn div_rem(&self, f: &Poly, g: &Poly) -> (Poly, Poly) {
        let dg = Self::deg(g).expect("division by zero polynomial mod p");
        if f.len() <= dg {
            return (Vec::new(), f.clone());
        }
        let inv = self.inv(g[dg]);
        let mut rem = f.clone();
        let mut q = vec![0u64; f.len() - dg];
        for i in (0..q.len()).rev() {
            let c = self.mul(rem[i + dg], inv);
            if c == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                rem[i + j] = self.sub(rem[i + j], self.mul(c, b));
            }
            q[i] = c;
        }
        rem.truncate(dg);
        (self.trim(q), self.trim(rem))
    }

    pub fn rem(&self, f: &Poly, g: &Poly) -> Poly {
        self.div_rem(f, g).1
    }

    pub fn monic(&self, f: &Poly) -> Poly {
        match f.last() {
            None => Vec::new(),
            Some(&lc) => {
                let inv = self.inv(lc);
                f.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    pub fn gcd(&self, f: &Poly, g: &Poly) -> Poly {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(s, t)` with `s*f + t*g = 1`; requires coprime inputs.
    pub fn bezout(&self, f: &Poly, g: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        assert_eq!(r0.len(), 1, "bezout on non-coprime polynomials");
        let inv = self.inv(r0[0]);
        let sc = |v: &Poly| self.trim(v.iter().map(|&c| self.mul(c, inv)).collect());
        (sc(&s0), sc(&t0))
    }

    pub fn derivative(&self, f: &Poly) -> Poly {
        let out = f.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect();
        self.trim(out)
    }

    pub fn powmod(&self, base: &Poly, exp: &BigUint, m: &Poly) -> Poly {
        let mut result: Poly = self.rem(&vec![1], m);
        let b = self.rem(base, m);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            result = self.rem(&self.poly_mul(&result, &result), m);
            if exp.bit(i) {
                result = self.rem(&self.poly_mul(&result, &b), m);
            }
        }
        result
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn ddf(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x: Poly = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 1;
        while Self::deg(&rest).unwrap_or(0) >= 2 * d {
            h = self.powmod(&h, &p, &rest);
            let g = self.gcd(&self.poly_sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.len() > 1 {
            let dr = rest.len() - 1;
            out.push((rest, dr));
        }
        out
    }

    /// Equal-degree factorization (Cantor-Zassenhaus) of a monic product of degree-`d` irreducibles.
    pub fn edf<R: Rng>(&self, f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a: Poly = self.trim((0..n).map(|_| rng.random_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let g = self.gcd(&a, f);
            let split = if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                let b = self.poly_sub(&self.powmod(&a, &e, f), &vec![1]);
                self.gcd(&b, f)
            };
            if split.len() > 1 && split.len() < f.len() {
                let other = self.monic(&self.div_rem(f, &split).0);
                let mut out = self.edf(&split, d, rng);
                out.extend(self.edf(&other, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic square-free polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &Poly, rng: &mut R) -> Vec<Poly> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }

    pub fn is_squarefree(&self, f: &Poly) -> bool {
        let g = self.gcd(f, &self.derivative(f));
        g.len() == 1
    }
}

pub(crate) fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_x4_minus_1_mod_5() {
        let fp = Fp::new(5);
        let f: Poly = vec![4, 0, 0, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = fp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1], vec![3, 1], vec![4, 1]]);
    }

    #[test]
    fn factors_mixed_degrees_mod_7() {
        let fp = Fp::new(7);
        // (x^2 + 1)(x + 3) is square-free over F_7; x^2+1 is irreducible since 7 ≡ 3 mod 4.
        let f = fp.poly_mul(&vec![1, 0, 1], &vec![3, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let fs = fp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![3, 1]]);
    }

    #[test]
    fn bezout_identity() {
        let fp = Fp::new(11);
        let f: Poly = vec![1, 0, 1];
        let g: Poly = vec![3, 1];
        let (s, t) = fp.bezout(&f, &g);
        let lhs = fp.poly_add(&fp.poly_mul(&s, &f), &fp.poly_mul(&t, &g));
        assert_eq!(lhs, vec![1]);
    }
}
