//! Runs the bundled mini experiment and prints the tables.

use densent::experiments::{run_experiment, ExperimentConfig};
use densent::fixture;

fn main() {
    let config = ExperimentConfig::from_toml_str(fixture::EVAL_CONFIG, &fixture::dir()).expect("fixture config");
    let report = run_experiment(&config).expect("fixture run");
    print!("{}", report.render_table());
    for gap in &report.diagnostics.duality {
        println!("duality {}: mean {:.3e}, max {:.3e} over {} pairs", gap.op, gap.mean_abs, gap.max_abs, gap.pairs);
    }
    for cell in report.failed_cells() {
        println!("failed: {} {} {}: {}", cell.model, cell.mode, cell.measure.label(), cell.error.as_deref().unwrap_or(""));
    }
}
