pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The largest divisor of `n` whose prime divisors all satisfy `keep`.
pub fn part(mut n: u64, keep: impl Fn(u64) -> bool) -> u64 {
    let mut out = 1;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            if keep(d) {
                out *= d;
            }
            n /= d;
        }
        d += 1;
    }
    if n > 1 && keep(n) {
        out *= n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_prime(2) && is_prime(47) && !is_prime(1) && !is_prime(49));
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(part(360, |p| p == 2), 8);
        assert_eq!(part(360, |p| p != 2), 45);
    }
}
