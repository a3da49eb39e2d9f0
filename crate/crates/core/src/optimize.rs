//! One-dimensional search helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping when the
/// bracket is narrower than `tol`. `f` is assumed unimodal on the bracket.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // endpoints of the original bracket may beat the interior estimate
    [(x, fx), (lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .fold(
            (x, fx),
            |best, cand| if cand.1 > best.1 { cand } else { best },
        )
}

/// Bisection for the switch point of a predicate with `pred(lo) == false`
/// and `pred(hi) == true`. Returns the smallest `x` found with `pred(x)`
/// true, within `tol` of the transition.
pub fn bisect_transition(pred: impl Fn(f64) -> bool, lo: f64, hi: f64, tol: f64) -> Option<f64> {
    if pred(lo) || !pred(hi) {
        return None;
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if pred(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    Some(b)
}
