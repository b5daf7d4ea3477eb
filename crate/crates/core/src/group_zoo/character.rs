//! Character tables by the Burnside–Dixon method.
//!
//! Class-multiplication coefficients give commuting matrices whose common
//! eigenvectors (mod a prime `p ≡ 1 mod exponent`) are the central characters.
//! Degrees follow from `Σ h_j |χ(g_j)|² = |G|`, and each value is lifted to
//! `Z[ζ_e]` by recovering the eigenvalue multiplicities of `ρ(g)`.

use serde::Serialize;

use super::CayleyTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::numtheory;
use crate::perm_group::{PermGroup, Permutation};

#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    /// Values are expressed over powers of `ζ_m` with `m` this order.
    pub root_of_unity_order: u32,
    pub group_order: u64,
    pub class_sizes: Vec<u64>,
    pub class_rep_orders: Vec<u64>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Cyclotomic>>,
    pub lifting_prime: u64,
    #[serde(skip)]
    pub representatives: Vec<Permutation>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// Row `i` as integers, when every entry is rational.
    pub fn integer_row(&self, i: usize) -> Option<Vec<i64>> {
        self.values[i].iter().map(Cyclotomic::as_integer).collect()
    }

    pub fn check_orthogonality(&self) -> Result<()> {
        let r = self.num_classes();
        let m = self.root_of_unity_order;
        let n = self.group_order as i64;
        for a in 0..r {
            for b in 0..r {
                let mut s = Cyclotomic::zero(m);
                for j in 0..r {
                    let t = self.values[a][j].mul(&self.values[b][j].conj());
                    s = s.add(&t.scale(self.class_sizes[j] as i64));
                }
                let want = if a == b { n } else { 0 };
                if s != Cyclotomic::from_int(m, want) {
                    return Err(Error::Defect(format!("row orthogonality fails for characters {a}, {b}: got {s}")));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let mut s = Cyclotomic::zero(m);
                for a in 0..r {
                    s = s.add(&self.values[a][i].mul(&self.values[a][j].conj()));
                }
                let want = if i == j { n / self.class_sizes[i] as i64 } else { 0 };
                if s != Cyclotomic::from_int(m, want) {
                    return Err(Error::Defect(format!("column orthogonality fails for classes {i}, {j}: got {s}")));
                }
            }
        }
        Ok(())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2·sqrt(n)`. The second bound
/// makes degrees `d ≤ sqrt(n)` recoverable from `d² mod p`.
pub(crate) fn lifting_prime(e: u64, n: u64) -> Result<u64> {
    const LIMIT: u64 = 1 << 31;
    let mut p = e + 1;
    while p < LIMIT {
        if p * p > 4 * n && numtheory::is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::Unsupported(format!("no lifting prime below {LIMIT} for exponent {e}")))
}

fn primitive_root(p: u64) -> u64 {
    let factors = numtheory::factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime modulus has a primitive root")
}

type Mat = Vec<Vec<u64>>;

/// Basis of the right nullspace of `a` (rows × cols) mod `p`.
fn nullspace(a: &Mat, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = a.clone();
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for k in 0..cols {
                    m[i][k] = (m[i][k] + p - f * m[row][k] % p) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial mod `p`, lowest degree first, via Hessenberg form.
fn charpoly(a: &Mat, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for j in m + 1..n {
            let u = h[j][m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            for k in 0..n {
                h[j][k] = (h[j][k] + p - u * h[m][k] % p) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[j]) % p;
            }
        }
    }
    // p_{m+1} = (x - h_mm) p_m - Σ_{i<m} (Π_{k=i+1..m} h_{k,k-1}) h_{i,m} p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let pm = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in pm.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - c * h[m][m] % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % p;
            let coef = prod * h[i][m] % p;
            if coef != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + p - coef * c % p) % p;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Splits `space` (a basis) into common eigenspaces of `m` restricted to it.
fn split(space: &[Vec<u64>], m: &Mat, p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = space.len();
    let r = m.len();
    let apply =
        |v: &[u64]| -> Vec<u64> { (0..r).map(|j| (0..r).fold(0u64, |acc, k| (acc + m[j][k] * v[k]) % p)).collect() };
    // Coordinates of M w_a in the basis: solve [w_0 .. w_{d-1} | M w_a].
    let mut restricted = vec![vec![0u64; d]; d];
    for a in 0..d {
        let target = apply(&space[a]);
        let aug: Mat = (0..r)
            .map(|j| {
                let mut row: Vec<u64> = space.iter().map(|w| w[j]).collect();
                row.push((p - target[j]) % p);
                row
            })
            .collect();
        let sol = nullspace(&aug, d + 1, p)
            .into_iter()
            .find(|v| v[d] == 1)
            .ok_or_else(|| Error::Defect("eigenspace is not invariant".into()))?;
        for b in 0..d {
            restricted[b][a] = sol[b];
        }
    }
    let cp = charpoly(&restricted, p);
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        if found == d {
            break;
        }
        if eval_poly(&cp, lambda, p) != 0 {
            continue;
        }
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda) % p;
        }
        let kernel = nullspace(&shifted, d, p);
        found += kernel.len();
        let lifted = kernel
            .into_iter()
            .map(|x| (0..r).map(|j| (0..d).fold(0u64, |acc, a| (acc + x[a] * space[a][j]) % p)).collect())
            .collect();
        parts.push(lifted);
    }
    if found != d {
        return Err(Error::Defect("class matrix does not split over the lifting prime".into()));
    }
    Ok(parts)
}

pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    let limits = *g.limits();
    let n = g.order_u64().unwrap_or(u64::MAX);
    if n > limits.character_bound {
        return Err(Error::resource("group order for character table", n, limits.character_bound));
    }
    let t = CayleyTable::new(g)?;
    let classes = g.class_members()?;
    let r = classes.len();
    let mut class_of = vec![0usize; t.len()];
    for (c, members) in classes.iter().enumerate() {
        for x in members {
            class_of[t.index_of(x).unwrap()] = c;
        }
    }
    let h: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let reps: Vec<Permutation> = classes.iter().map(|c| c[0].clone()).collect();
    let rep_orders: Vec<u64> = reps.iter().map(Permutation::order).collect();
    let inv_class: Vec<usize> = reps.iter().map(|x| class_of[t.index_of(&x.inverse()).unwrap()]).collect();
    let e = rep_orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));
    let p = lifting_prime(e, n)?;

    // counts[i][j][k] = #{(x, y) : x ∈ C_i, y ∈ C_j, xy ∈ C_k}; c_ijk = counts / h_k.
    let mut counts = vec![0u64; r * r * r];
    for x in 0..t.len() {
        for y in 0..t.len() {
            counts[(class_of[x] * r + class_of[y]) * r + class_of[t.mul(x, y)]] += 1;
        }
    }
    let matrices: Vec<Mat> = (0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| (counts[(i * r + j) * r + k] / h[k]) % p).collect()).collect())
        .collect();

    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for m in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(&s, m, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Defect(format!("found {} common eigenspaces for {r} classes", spaces.len())));
    }

    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let zinv = inv_mod(z, p);
    let einv = inv_mod(e % p, p);
    // power_class[j][l] = class of rep_j^l
    let power_class: Vec<Vec<usize>> = reps
        .iter()
        .map(|x| {
            let mut acc = Permutation::identity(x.degree());
            (0..e)
                .map(|_| {
                    let c = class_of[t.index_of(&acc).unwrap()];
                    acc = acc.mul(x);
                    c
                })
                .collect()
        })
        .collect();
    let dmax = (n as f64).sqrt() as u64 + 1;

    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s[0];
        let scale = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        let norm = (0..r).fold(0u64, |acc, j| (acc + omega[j] * omega[inv_class[j]] % p * inv_mod(h[j] % p, p)) % p);
        let d2 = n % p * inv_mod(norm, p) % p;
        let d = (1..=dmax)
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| Error::Defect("no integral degree matches the lifted norm".into()))?;
        let chi: Vec<u64> = (0..r).map(|j| omega[j] * (d % p) % p * inv_mod(h[j] % p, p) % p).collect();
        let mut values = Vec::with_capacity(r);
        for j in 0..r {
            let mut mult = vec![0i64; e as usize];
            for (k, slot) in mult.iter_mut().enumerate() {
                let mut s = 0u64;
                let step = pow_mod(zinv, k as u64, p);
                let mut w = 1u64;
                for l in 0..e as usize {
                    s = (s + chi[power_class[j][l]] * w) % p;
                    w = w * step % p;
                }
                let mk = s * einv % p;
                if mk > d {
                    return Err(Error::Defect(format!("eigenvalue multiplicity {mk} exceeds degree {d}")));
                }
                *slot = mk as i64;
            }
            values.push(Cyclotomic::from_exponent_coeffs(e as u32, &mult));
        }
        rows.push((d, values));
    }
    let one = Cyclotomic::from_int(e as u32, 1);
    rows.sort_by(|a, b| {
        let ta = !a.1.iter().all(|x| *x == one);
        let tb = !b.1.iter().all(|x| *x == one);
        (a.0, ta, &a.1).cmp(&(b.0, tb, &b.1))
    });
    let table = CharacterTable {
        root_of_unity_order: e as u32,
        group_order: n,
        class_sizes: h,
        class_rep_orders: rep_orders,
        degrees: rows.iter().map(|r| r.0).collect(),
        values: rows.into_iter().map(|r| r.1).collect(),
        lifting_prime: p,
        representatives: reps,
    };
    table.check_orthogonality()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_zoo::{construct_named, direct_product, Family};

    fn degrees(f: Family) -> Vec<u64> {
        character_table(&construct_named(f).unwrap()).unwrap().degrees
    }

    #[test]
    fn lifting_primes() {
        assert_eq!(lifting_prime(6, 6).unwrap(), 7);
        assert_eq!(lifting_prime(12, 24).unwrap(), 13);
        // 2·sqrt(60) ≈ 15.5, and 31 is the first prime ≡ 1 mod 30 above it
        assert_eq!(lifting_prime(30, 60).unwrap(), 31);
    }

    #[test]
    fn charpoly_of_companion() {
        // x^2 - 3x + 2 = (x-1)(x-2) mod 7
        let a = vec![vec![0, 5], vec![1, 3]];
        assert_eq!(charpoly(&a, 7), vec![2, 4, 1]);
    }

    #[test]
    fn degree_lists() {
        assert_eq!(degrees(Family::Symmetric(3)), vec![1, 1, 2]);
        assert_eq!(degrees(Family::Symmetric(4)), vec![1, 1, 2, 3, 3]);
        assert_eq!(degrees(Family::Alternating(4)), vec![1, 1, 1, 3]);
        assert_eq!(degrees(Family::Alternating(5)), vec![1, 3, 3, 4, 5]);
        assert_eq!(degrees(Family::Cyclic(7)), vec![1; 7]);
        assert_eq!(degrees(Family::Quaternion), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees(Family::Frobenius21), vec![1, 1, 1, 3, 3]);
    }

    #[test]
    fn s3_rows() {
        let t = character_table(&construct_named(Family::Symmetric(3)).unwrap()).unwrap();
        let rows: Vec<Vec<i64>> = (0..3).map(|i| t.integer_row(i).unwrap()).collect();
        assert_eq!(rows, vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]]);
    }

    #[test]
    fn irrational_values_in_z3() {
        let t = character_table(&construct_named(Family::Cyclic(3)).unwrap()).unwrap();
        assert_eq!(t.root_of_unity_order, 3);
        assert!(t.integer_row(1).is_none());
    }

    #[test]
    fn product_degrees() {
        let z2 = construct_named(Family::Cyclic(2)).unwrap();
        let s3 = construct_named(Family::Symmetric(3)).unwrap();
        let t = character_table(&direct_product(&z2, &s3).unwrap()).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn bound_is_resource_error() {
        let g = construct_named(Family::Symmetric(6)).unwrap();
        assert!(matches!(character_table(&g), Err(Error::Resource { .. })));
    }
}
