//! Prints the regime partition of a q interval.

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<f64>().expect("number"));
    let lo = args.next().unwrap_or(0.8);
    let hi = args.next().unwrap_or(2.0);
    let step = args.next().unwrap_or(0.01);
    let profile = qaufbau::classify_regimes(lo, hi, step).expect("valid scan");
    for i in &profile.intervals {
        println!("[{:.6}, {:.6}] {}", i.q_lo, i.q_hi, i.label);
    }
    for b in &profile.boundaries {
        println!("boundary {:.12} {:?}", b.q, b.cause);
    }
}
