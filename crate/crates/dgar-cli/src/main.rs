mod commands;
mod load;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::RunConfig;

#[derive(Parser)]
#[command(name = "dgar", version, about = "Auslander-Reiten theory over cochain DG algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra description.
    Validate {
        algebra: String,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Run the three Gorenstein tests side by side.
    Gorenstein {
        /// Description file or catalog name.
        algebra: String,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Minimal semi-free resolution of a module.
    Resolve {
        algebra: String,
        /// R, R[n], k, DR or a module description file.
        module: String,
        #[command(flatten)]
        config: RunConfig,
    },
    /// The AR translation of a compact module.
    Tau {
        algebra: String,
        module: String,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        config: RunConfig,
    },
    /// The AR triangle ending at an indecomposable compact module.
    ArTriangle {
        algebra: String,
        module: String,
        /// Also compute the arrow labels (one more triangle per summand).
        #[arg(long)]
        labels: bool,
        #[command(flatten)]
        config: RunConfig,
    },
    /// The tree of mapping-cone extensions of R.
    Tree {
        algebra: String,
        #[arg(long)]
        e: i32,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        config: RunConfig,
    },
    /// A window of the AR quiver over the d-sphere.
    SphereQuiver {
        d: i32,
        /// Largest |j|.
        j: i32,
        /// Largest length index m.
        m: u32,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Certify compact indecomposables as lying in distinct AR components.
    Certify {
        algebra: String,
        #[arg(required = true)]
        modules: Vec<String>,
        #[command(flatten)]
        config: RunConfig,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { algebra, config } => commands::validate(algebra, config),
        Command::Gorenstein { algebra, config } => commands::gorenstein(algebra, config),
        Command::Resolve { algebra, module, config } => commands::resolve(algebra, module, config),
        Command::Tau { algebra, module, inverse, config } => commands::tau(algebra, module, *inverse, config),
        Command::ArTriangle { algebra, module, labels, config } => commands::ar_triangle(algebra, module, *labels, config),
        Command::Tree { algebra, e, depth, config } => commands::tree(algebra, *e, *depth, config),
        Command::SphereQuiver { d, j, m, config } => commands::sphere_quiver(*d, *j, *m, config),
        Command::Certify { algebra, modules, config } => commands::certify(algebra, modules, config),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let (code, reason) = output::classify(&err);
            let line = serde_json::json!({ "error": reason, "message": format!("{err:#}") });
            eprintln!("{line}");
            ExitCode::from(code)
        }
    }
}
