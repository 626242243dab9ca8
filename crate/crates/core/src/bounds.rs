//! Moore bounds, defect lower bounds and search-space counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Moore bound `M(r, z, k)` from the layer recurrence
/// `e' = (r-1)e + r d`, `d' = z(e + d)` with `e_1 = r`, `d_1 = z`, where
/// `e_i` and `d_i` count the tree vertices at depth `i` entered by an edge
/// and by an arc.
pub fn moore_mixed(r: u64, z: u64, k: u32) -> BigUint {
    let mut total = BigUint::one();
    let (mut e, mut d) = (BigUint::from(r), BigUint::from(z));
    for _ in 0..k {
        total += &e + &d;
        let next_e = &e * (r.saturating_sub(1)) + &d * r;
        let next_d = (&e + &d) * z;
        e = next_e;
        d = next_d;
    }
    total
}

/// Closed-form evaluation of `M(r, z, k)` in floating point. A cross-check
/// for [`moore_mixed`], not a source of truth. Undefined at `r = 1, z = 0`,
/// where the two roots coincide.
pub fn moore_mixed_closed_form(r: u64, z: u64, k: u32) -> f64 {
    let (r, z) = (r as f64, z as f64);
    let v = (z + r).powi(2) + 2.0 * (z - r) + 1.0;
    let sv = v.sqrt();
    let u1 = (z + r - 1.0 - sv) / 2.0;
    let u2 = (z + r - 1.0 + sv) / 2.0;
    let a = (sv - (z + r + 1.0)) / (2.0 * sv);
    let b = (sv + (z + r + 1.0)) / (2.0 * sv);
    let geo = |u: f64| {
        if (u - 1.0).abs() < 1e-12 {
            (k + 1) as f64
        } else {
            (u.powi(k as i32 + 1) - 1.0) / (u - 1.0)
        }
    };
    a * geo(u1) + b * geo(u2)
}

/// `M(1, 1, k)` via `M(k) = M(k-1) + M(k-2) + 2`, `M(0) = 1`, `M(1) = 3`.
///
/// The constant is `+2`: with `-2` the second term would already be 2, not
/// 6, and the closed form (whose constant term is `-2`) disagrees.
pub fn moore_11(k: u32) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::from(3u32));
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &prev + &cur + 2u32;
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed form of `M(1, 1, k)` in floating point.
pub fn moore_11_closed_form(k: u32) -> f64 {
    let s5 = 5f64.sqrt();
    let phi = (1.0 + s5) / 2.0;
    let psi = (1.0 - s5) / 2.0;
    (1.0 - 2.0 / s5) * psi.powi(k as i32 + 1) + (1.0 + 2.0 / s5) * phi.powi(k as i32 + 1) - 2.0
}

/// Fibonacci numbers with `f_0 = f_1 = 1`.
pub fn fibonacci(i: u32) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 0..i {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Lower bound `δ(k)` on the defect of a (1,1)-regular mixed graph of
/// diameter `k >= 1`: `δ(1) = 0`, `δ(2) = 1`, and
/// `δ(k) = δ(k-1) + δ(k-2) + [k ≡ 1, 2 mod 6]`.
pub fn defect_lower(k: u32) -> BigUint {
    assert!(k >= 1, "defect bound needs k >= 1");
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    if k == 1 {
        return prev;
    }
    for j in 3..=k {
        let mut next = &prev + &cur;
        if j % 6 == 1 || j % 6 == 2 {
            next += 1u32;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// The same bound from `δ(k+6) = δ(k) + f_{k-1} + f_{k+4}` and the six
/// initial values.
pub fn defect_lower_six_step(k: u32) -> BigUint {
    assert!(k >= 1, "defect bound needs k >= 1");
    const INIT: [u32; 6] = [0, 1, 1, 2, 3, 5];
    if k <= 6 {
        return BigUint::from(INIT[k as usize - 1]);
    }
    defect_lower_six_step(k - 6) + fibonacci(k - 7) + fibonacci(k - 2)
}

/// Best upper bound on the order of a (1,1)-regular mixed graph of diameter
/// `k >= 2`. Small diameters use the exhaustive-search values; from `k = 6`
/// on it is the largest even number at most `M(1,1,k) - δ(k)`.
pub fn upper_bound(k: u32) -> BigUint {
    assert!(k >= 2, "upper bound needs k >= 2");
    match k {
        2 => 6u32.into(),
        3 => 10u32.into(),
        4 => 14u32.into(),
        5 => 26u32.into(),
        _ => {
            let b = moore_11(k) - defect_lower(k);
            if (&b % 2u32).is_zero() {
                b
            } else {
                b - 1u32
            }
        }
    }
}

/// Largest known order of a (1,1)-regular mixed graph of diameter `k`.
/// Up to `k = 16` this is the registry of reported constructions; beyond it,
/// the better of the two families with a proven diameter bound: `G(n)` with
/// `2n <= k` and `H_n(K_3)` with `2n - 1 <= k`.
pub fn lower_bound(k: u32) -> BigUint {
    assert!(k >= 2, "lower bound needs k >= 2");
    const KNOWN: [u32; 15] = [6, 10, 14, 24, 34, 54, 72, 112, 144, 240, 336, 544, 800, 1024, 1600];
    if k <= 16 {
        return KNOWN[k as usize - 2].into();
    }
    let g_n = k / 2;
    let g_order = (BigUint::one() << (g_n + 1)) - 4u32;
    let h_n = k.div_ceil(2);
    let h_order = BigUint::from(3u32) << (h_n - 1);
    g_order.max(h_order)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub k: u32,
    pub moore: BigUint,
    pub defect_lower: BigUint,
    pub upper: BigUint,
    pub lower: BigUint,
}

impl BoundReport {
    pub fn new(k: u32) -> Self {
        BoundReport {
            k,
            moore: moore_11(k),
            defect_lower: defect_lower(k),
            upper: upper_bound(k),
            lower: lower_bound(k),
        }
    }
}

/// Words of length `l` over `{0,1}` without two consecutive zeros, split by
/// last symbol: returns `(a, b, c)` with `b` ending in 0 (entered by an edge
/// in the Moore tree) and `c` ending in 1 or empty (entered by an arc).
pub fn level_counts(l: u32) -> (BigUint, BigUint, BigUint) {
    if l == 0 {
        return (BigUint::one(), BigUint::zero(), BigUint::one());
    }
    // a(l) = a(l-1) + a(l-2), a(0) = 1, a(1) = 2; b(l) = a(l-2); c(l) = a(l-1).
    let (mut a_prev, mut a) = (BigUint::one(), BigUint::from(2u32));
    let mut a_prev2 = BigUint::zero();
    for _ in 1..l {
        let next = &a + &a_prev;
        a_prev2 = std::mem::replace(&mut a_prev, std::mem::replace(&mut a, next));
    }
    let b = if l == 1 { BigUint::one() } else { a_prev2 };
    let c = a_prev;
    (a, b, c)
}

/// Derangement number `D_n`.
pub fn derangements(n: u32) -> BigUint {
    let (mut d0, mut d1) = (BigUint::one(), BigUint::zero());
    if n == 0 {
        return d0;
    }
    for i in 2..=n {
        let next = (&d0 + &d1) * (i - 1);
        d0 = d1;
        d1 = next;
    }
    d1
}

/// Perfect matchings of `m` labeled vertices: `(m-1)!!` for even `m`, zero
/// for odd `m`.
pub fn perfect_matchings(m: u32) -> BigUint {
    if m % 2 == 1 {
        return BigUint::zero();
    }
    (1..m).step_by(2).fold(BigUint::one(), |acc, x| acc * x)
}

/// Upper bound on the number of completions examined by the almost-Moore
/// search: `D_{a(k)} (b(k) pm(c(k)+1) + c(k) pm(c(k)-1))`.
pub fn search_space_bound(k: u32) -> BigUint {
    let (a, b, c) = level_counts(k);
    let c_small = c.to_u32().expect("level count fits in u32 for supported k");
    let a_small = a.to_u32().expect("level count fits in u32 for supported k");
    let matchings = b * perfect_matchings(c_small + 1) + &c * perfect_matchings(c_small.saturating_sub(1));
    derangements(a_small) * matchings
}
