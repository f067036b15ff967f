//! Factorization of integer polynomials into irreducibles over Z (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{is_small_prime, Fp, Poly};
use super::poly::IntPolynomial;

/// Square-free part in primitive normal form (each distinct irreducible factor once).
pub fn squarefree_part(f: &IntPolynomial) -> IntPolynomial {
    assert!(!f.is_zero(), "square-free part of the zero polynomial");
    if f.degree() == Some(0) {
        return IntPolynomial::from_i64s(&[1]);
    }
    let q = f.to_qpoly();
    let g = q.gcd(&q.derivative());
    let (_, sf) = q.div_rem(&g).0.to_primitive();
    sf
}

/// Distinct irreducible factors over Z, each primitive with positive leading coefficient,
/// sorted by (degree, coefficients). Multiplicities and the content are dropped.
pub fn irreducible_factors(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let sf = squarefree_part(f);
    let mut out = match sf.degree() {
        Some(0) | None => Vec::new(),
        _ => factor_squarefree(&sf),
    };
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

/// True when `f` (nonconstant) is irreducible over Q.
pub fn is_irreducible(f: &IntPolynomial) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let sf = squarefree_part(f);
            sf.degree() == f.degree() && factor_squarefree(&sf).len() == 1
        }
    }
}

/// Irreducible factors of a primitive square-free polynomial of positive degree.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.degree().expect("nonzero");
    if n == 1 {
        return vec![f.primitive()];
    }
    // x divides f: peel it so the trailing coefficient is nonzero.
    if f.coeff(0).is_zero() {
        let rest = IntPolynomial::new(f.coeffs()[1..].to_vec());
        let mut out = vec![IntPolynomial::x()];
        if rest.degree().unwrap_or(0) > 0 {
            out.extend(factor_squarefree(&rest.primitive()));
        }
        return out;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let (fp, modular) = choose_prime(f, &mut rng);
    if modular.len() == 1 {
        return vec![f.primitive()];
    }

    let lc = f.leading();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * f.max_abs_coeff();
    let p = BigInt::from(fp.p);
    let mut modulus = p.clone();
    let mut steps = 1;
    while modulus <= bound {
        modulus *= &p;
        steps += 1;
    }
    let lifted = hensel_lift(f, &fp, &modular, steps);
    recombine(f, lifted, &modulus)
}

fn reduce_mod_p(f: &IntPolynomial, fp: &Fp) -> Poly {
    let p = BigInt::from(fp.p);
    let v = f.coeffs().iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect();
    fp.trim(v)
}

/// Tries several good primes and keeps the one giving the fewest modular factors.
fn choose_prime(f: &IntPolynomial, rng: &mut ChaCha8Rng) -> (Fp, Vec<Poly>) {
    let n = f.degree().unwrap();
    let lc = f.leading();
    let mut best: Option<(Fp, Vec<Poly>)> = None;
    let mut tried = 0;
    let mut q = 1u64;
    while tried < 5 {
        q += 2;
        if !is_small_prime(q) || (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let fp = Fp::new(q);
        let fm = reduce_mod_p(f, &fp);
        if fm.len() != n + 1 || !fp.is_squarefree(&fm) {
            continue;
        }
        tried += 1;
        let factors = fp.factor_squarefree(&fp.monic(&fm), rng);
        let better = best.as_ref().is_none_or(|(_, b)| factors.len() < b.len());
        if better {
            let single = factors.len() == 1;
            best = Some((fp, factors));
            if single {
                break;
            }
        }
    }
    best.expect("a good prime always exists for a square-free polynomial")
}

fn poly_to_big(f: &Poly) -> Vec<BigInt> {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn big_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

/// Linear multifactor Hensel lifting from `p` to `p^steps`; factors stay monic.
fn hensel_lift(f: &IntPolynomial, fp: &Fp, modular: &[Poly], steps: usize) -> Vec<Vec<BigInt>> {
    let r = modular.len();
    let p = BigInt::from(fp.p);
    let lc = f.leading();
    let lc_inv = fp.inv(lc.mod_floor(&p).to_u64().unwrap());

    // a_i = (prod_{j != i} u_j)^{-1} mod u_i, so that sum a_i prod_{j != i} u_j = 1 (mod p).
    let cofactor = |i: usize| -> Poly {
        let mut acc: Poly = vec![1];
        for (j, u) in modular.iter().enumerate() {
            if j != i {
                acc = fp.poly_mul(&acc, u);
            }
        }
        acc
    };
    let a: Vec<Poly> = (0..r)
        .map(|i| {
            let ui = &modular[i];
            let ci = fp.rem(&cofactor(i), ui);
            fp.bezout(&ci, ui).0
        })
        .collect();

    let mut u: Vec<Vec<BigInt>> = modular.iter().map(poly_to_big).collect();
    let mut pm = p.clone();
    for _ in 1..steps {
        let next = &pm * &p;
        let mut prod = vec![lc.mod_floor(&next)];
        for ui in &u {
            prod = big_mul(&prod, ui, &next);
        }
        let mut e: Poly = Vec::with_capacity(f.coeffs().len());
        for i in 0..f.coeffs().len() {
            let diff = (f.coeff(i) - prod.get(i).cloned().unwrap_or_default()).mod_floor(&next);
            debug_assert!((&diff % &pm).is_zero());
            e.push((diff / &pm).mod_floor(&p).to_u64().unwrap());
        }
        let e = fp.trim(e);
        for i in 0..r {
            let c = fp.rem(&fp.poly_mul(&e, &a[i]), &modular[i]);
            let delta: Poly = c.iter().map(|&x| fp.mul(x, lc_inv)).collect();
            for (j, d) in delta.iter().enumerate() {
                u[i][j] += &pm * BigInt::from(*d);
            }
        }
        pm = next;
    }
    u
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn recombine(f: &IntPolynomial, lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<IntPolynomial> {
    let mut remaining = lifted;
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), s) {
            let lc = rest.leading();
            let mut g = vec![lc.mod_floor(modulus)];
            for &i in &combo {
                g = big_mul(&g, &remaining[i], modulus);
            }
            let cand = IntPolynomial::new(g.iter().map(|c| symmetric(c, modulus)).collect()).primitive();
            if let Some(q) = rest.exact_div(&cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push(cand);
                rest = q.primitive();
                for &i in combo.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest.primitive());
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn combinations_enumerates_all() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }

    #[test]
    fn k7_closure_splits_into_linear_and_quadratic() {
        let f = p(&[-15, 101, -187, 105]);
        assert_eq!(irreducible_factors(&f), vec![p(&[-5, 7]), p(&[3, -16, 15])]);
    }

    #[test]
    fn swinnerton_dyer_like_polynomial_stays_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible over Q.
        let f = p(&[1, 0, -10, 0, 1]);
        assert_eq!(irreducible_factors(&f), vec![f.clone()]);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn repeated_and_content_are_dropped() {
        // 6 (x - 1)^2 (x + 2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1])).scale(&BigInt::from(6));
        assert_eq!(irreducible_factors(&f), vec![p(&[-1, 1]), p(&[2, 1])]);
    }

    #[test]
    fn k8_closure_is_irreducible() {
        assert!(is_irreducible(&p(&[36, -342, 1023, -1224, 512])));
    }

    #[test]
    fn product_of_quadratics_with_nonmonic_leading_terms() {
        let a = p(&[3, -16, 15]);
        let b = p(&[7, 2, 9]);
        let c = p(&[3, 1, 0, 4]);
        let f = a.mul(&b).mul(&c);
        let mut want = vec![a, b, c];
        want.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.cmp(y)));
        assert_eq!(irreducible_factors(&f), want);
    }

    #[test]
    fn factor_of_x_is_peeled() {
        let f = p(&[0, -2, 0, 1]);
        assert_eq!(irreducible_factors(&f), vec![p(&[0, 1]), p(&[-2, 0, 1])]);
    }
}
