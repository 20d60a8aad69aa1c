use clap::Parser;

use abse::alloc_meter::CountingAlloc;
use abse::cli::{run, Cli, EXIT_INVALID, EXIT_OK};

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        // clap uses 2 for usage errors, which is reserved for mismatches here
        std::process::exit(if e.use_stderr() { EXIT_INVALID } else { EXIT_OK });
    });
    std::process::exit(run(cli));
}
