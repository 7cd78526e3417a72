/// Default saturation point of the naturals used by the sum example.
pub const SUM_CAP: usize = 16;

pub fn sat_add(a: usize, b: usize, cap: usize) -> usize {
    (a + b).min(cap)
}

pub fn sum_sat(xs: &[usize], cap: usize) -> usize {
    xs.iter().rfold(0, |acc, &a| sat_add(a, acc, cap))
}

/// `r [] = [b]`, `r (a : t) = a : r t`.
pub fn rep_changer(b: usize, xs: &[usize]) -> Vec<usize> {
    match xs.split_first() {
        None => vec![b],
        Some((&a, t)) => {
            let mut out = vec![a];
            out.extend(rep_changer(b, t));
            out
        }
    }
}
