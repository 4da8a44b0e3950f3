use std::net::SocketAddr;
use std::path::PathBuf;
use std::time::Duration;

use clap::Parser;
use esd_service::{app, Config};

#[derive(Parser, Debug)]
#[command(name = "esd-service", version, about = "Play the ESD labeling game over HTTP")]
struct Args {
    #[arg(long, default_value = "127.0.0.1:8080")]
    bind: SocketAddr,
    /// Directory with the built web UI, served under `/`.
    #[arg(long)]
    static_dir: Option<PathBuf>,
    /// Seconds of inactivity before a session is dropped.
    #[arg(long, default_value_t = 3600)]
    idle_secs: u64,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let args = Args::parse();
    let (router, _) = app(Config {
        idle_timeout: Duration::from_secs(args.idle_secs),
        static_dir: args.static_dir,
    });
    let listener = tokio::net::TcpListener::bind(args.bind).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router).await
}
