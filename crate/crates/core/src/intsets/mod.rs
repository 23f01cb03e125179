//! Subsets of ℤ: periodic sets (the basic clopen sets of the profinite
//! topology), Gödel-numbered sets `T(S)`, and nested periodic approximations
//! of closed sets.

mod closed;
mod godel;
mod periodic;

pub use closed::{nested_approx, ClosedSetApprox, ClosedTarget, SetDescription, Truth};
pub use godel::{GodelSet, GodelWindow};
pub use periodic::PeriodicSet;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
