use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::error::Result;
use crate::link::{PartialResolutions, Sign};

/// Shift constants of a partial-resolution sequence. Per-crossing vectors
/// are indexed by `k - 1`; the prefix sums by `k`, starting at `A_0 = B_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSConstants {
    pub a: Vec<i32>,
    pub a_tilde: Vec<i32>,
    pub b: Vec<i32>,
    pub b_tilde: Vec<i32>,
    pub big_a: Vec<i32>,
    pub big_b: Vec<i32>,
}

impl SSConstants {
    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self, k: usize) -> i32 {
        self.a[k - 1]
    }

    pub fn a_tilde(&self, k: usize) -> i32 {
        self.a_tilde[k - 1]
    }

    pub fn b(&self, k: usize) -> i32 {
        self.b[k - 1]
    }

    pub fn b_tilde(&self, k: usize) -> i32 {
        self.b_tilde[k - 1]
    }

    #[allow(non_snake_case)]
    pub fn A(&self, k: usize) -> i32 {
        self.big_a[k]
    }

    #[allow(non_snake_case)]
    pub fn B(&self, k: usize) -> i32 {
        self.big_b[k]
    }
}

/// Constants from the crossing counts of `D_k` and `D̄_k`. Fails if the
/// counts violate any of the shift identities.
pub fn ss_constants(parts: &PartialResolutions) -> Result<SSConstants> {
    let c = raw_constants(parts);
    shift_identities(parts, &c).into_result()?;
    Ok(c)
}

fn raw_constants(parts: &PartialResolutions) -> SSConstants {
    let m = parts.m();
    let mut c = SSConstants {
        a: Vec::with_capacity(m),
        a_tilde: Vec::with_capacity(m),
        b: Vec::with_capacity(m),
        b_tilde: Vec::with_capacity(m),
        big_a: vec![0],
        big_b: vec![0],
    };
    for k in 1..=m {
        let prev_minus = parts.closed(k - 1).n_minus as i32;
        let (a, at) = match parts.signs[k - 1] {
            Sign::Pos => (prev_minus - parts.closed(k).n_minus as i32 - 1, 0),
            Sign::Neg => (0, prev_minus - parts.open(k).n_minus as i32),
        };
        c.a.push(a);
        c.a_tilde.push(at);
        c.b.push(3 * a + 1);
        c.b_tilde.push(3 * at - 1);
        c.big_a.push(c.big_a[k - 1] + a);
        c.big_b.push(c.big_b[k - 1] + 3 * a + 1);
    }
    c
}

/// The four identities relating the normalization shifts of `D_{k-1}`,
/// `D_k` and `D̄_k`, plus `B_k = 3A_k + k`, for every `k`.
pub fn shift_identities(parts: &PartialResolutions, c: &SSConstants) -> CheckReport {
    let mut rep = CheckReport::new("shift identities");
    for k in 1..=parts.m() {
        let (pp, pm) = (parts.closed(k - 1).n_plus as i32, parts.closed(k - 1).n_minus as i32);
        let (cp, cm) = (parts.closed(k).n_plus as i32, parts.closed(k).n_minus as i32);
        let (op, om) = (parts.open(k).n_plus as i32, parts.open(k).n_minus as i32);
        rep.expect(-pm + 1 == -cm - c.a(k), || format!("k={k}: -n_(k-1)^- + 1 != -n_k^- - a_k"));
        rep.expect(-pm == -om - c.a_tilde(k), || format!("k={k}: -n_(k-1)^- != -ñ_k^- - ã_k"));
        rep.expect(pp - 2 * pm + 1 == cp - 2 * cm - c.b(k), || format!("k={k}: quantum shift of D_k"));
        rep.expect(pp - 2 * pm == op - 2 * om - c.b_tilde(k), || format!("k={k}: quantum shift of D̄_k"));
        rep.expect(c.B(k) == 3 * c.A(k) + k as i32, || format!("k={k}: B_k != 3A_k + k"));
    }
    rep
}
