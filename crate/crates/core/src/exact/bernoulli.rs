use num_traits::Zero;

use super::rational::{binomial, factorial, int, Rational};
use super::ExactError;

/// Bernoulli numbers `B_0..=B_n` with the convention `B_1 = -1/2`, from the
/// recurrence `sum_{k<=n} C(n+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(int(1));
    for m in 1..=n {
        let acc = (0..m).fold(Rational::zero(), |acc, k| {
            acc + &b[k] * Rational::from_integer(binomial(m as u64 + 1, k as u64))
        });
        b.push(-acc / int(m as i64 + 1));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("nonempty")
}

/// Coefficients `[c_0, c_2, …, c_{max_order}]` of the even series
/// `((x/2)/sin(x/2))^2 = sum_t c_{2t} x^{2t}`.
///
/// Uses `c_{2n} = (-1)^{n+1} (2n-1) B_{2n} / (2n)!`, obtained by
/// differentiating `(x/2) cot(x/2) = sum_n (-1)^n B_{2n} x^{2n} / (2n)!`.
pub fn b_series_coefficients(max_order: u32) -> Result<Vec<Rational>, ExactError> {
    if !max_order.is_multiple_of(2) {
        return Err(ExactError::OddOrder(max_order));
    }
    let top = max_order as usize / 2;
    let b = bernoulli_numbers(2 * top);
    Ok((0..=top)
        .map(|n| {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let num = &b[2 * n] * int(sign * (2 * n as i64 - 1));
            num / Rational::from_integer(factorial(2 * n as u64))
        })
        .collect())
}
