// SPDX-License-Identifier: Apache-2.0

use clap::Parser;

fn main() {
    let cli = ckit::Cli::parse();
    if let Err(e) = ckit::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
