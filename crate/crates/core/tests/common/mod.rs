//! Independent oracles: the explicit s/p/d/f polynomial rows and the ratio
//! form of the q-integer. None of this goes through the library's
//! q-integer or Casimir code.

#![allow(dead_code)]

use qaufbau::Orbital;

pub fn orb(s: &str) -> Orbital {
    s.parse().unwrap()
}

/// `(q^x - q^-x) / (q - q^-1)`, valid for `q != 1`.
pub fn ratio_q_integer(x: u32, q: f64) -> f64 {
    let x = x as f64;
    (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
}

/// `eps + 1` from the hard-coded rows for s, p, d and f.
pub fn explicit_row(n: u32, l: u32, q: f64) -> f64 {
    let a = 3.0 - 5.0 / 3.0 * q;
    let n2 = (n * n) as f64;
    let qi = 1.0 / q;
    match l {
        0 => n2,
        1 => n2 + a * (q + qi),
        2 => n2 + a * (q + qi) * (q * q + 1.0 + qi * qi),
        3 => n2 + a * (q * q + 1.0 + qi * qi) * (q * q * q + q + qi + qi * qi * qi),
        _ => panic!("explicit rows only cover l <= 3"),
    }
}

pub fn explicit_key(o: Orbital, q: f64) -> f64 {
    explicit_row(o.n(), o.l(), q)
}

pub const MADELUNG: [&str; 18] = [
    "1s", "2s", "2p", "3s", "3p", "4s", "3d", "4p", "5s", "4d", "5p", "6s", "4f", "5d", "6p", "7s",
    "5f", "6d",
];

pub const ION: [&str; 18] = [
    "1s", "2s", "2p", "3s", "3p", "3d", "4s", "4p", "4d", "5s", "5p", "4f", "5d", "6s", "6p", "5f",
    "6d", "7s",
];
