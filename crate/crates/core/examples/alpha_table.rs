//! Samples every case on a β grid, as CSV and as one JSON record.

use dp_alpha::catalog::SurfaceConfig;
use dp_alpha::output::{beta_grid, to_csv, OutputRecord, Provenance};

fn main() {
    let grid = beta_grid(4);
    let records: Vec<OutputRecord> = SurfaceConfig::all()
        .iter()
        .map(|&c| OutputRecord::new(c, Provenance::Engine, &grid).unwrap())
        .collect();
    print!("{}", to_csv(&records[..3]));
    println!("{}", records[0].to_json());
}
