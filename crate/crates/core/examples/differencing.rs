//! Differencing, exact inversion, summary statistics and the train/test split.
//!
//! Run with: cargo run --example differencing

use countcast::TimeSeries;

fn main() -> countcast::Result<()> {
    let cases = TimeSeries::new(vec![
        2.0, 0.0, 2.0, 5.0, 8.0, 13.0, 21.0, 34.0, 55.0, 89.0, 117.0, 134.0, 172.0, 227.0, 369.0,
    ])?;

    let s = cases.summarize()?;
    println!("summary: min {} q1 {} median {} mean {:.3} q3 {} max {}", s.min, s.q1, s.median, s.mean, s.q3, s.max);
    println!("         sd {:.3} var {:.3}", s.sd, s.var);

    let once = cases.difference(1)?;
    let twice = cases.difference(2)?;
    println!("\nfirst differences:  {:?}", once.values());
    println!("second differences: {:?}", twice.values());
    println!("origin kept for inversion: {:?}", twice.origin_head());

    let back = twice.undifference()?;
    println!("undifferenced matches input: {}", back.values() == cases.values());

    let (train, test) = cases.split(0.8)?;
    println!("\nsplit at 0.8: train {} values, test {} values", train.len(), test.len());
    println!("test window: {:?}", test.values());
    Ok(())
}
