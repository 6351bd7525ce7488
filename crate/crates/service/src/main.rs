use clap::Parser;
use cluster_service::{router, Limits};

#[derive(Parser)]
#[command(name = "cluster-service", about = "HTTP/JSON front end for cluster-core")]
struct Opts {
    #[arg(long, default_value = "127.0.0.1")]
    addr: String,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Largest exchange graph a request may ask for.
    #[arg(long, default_value_t = Limits::default().max_seeds)]
    max_seeds: usize,
    /// Largest mutation class a request may ask for.
    #[arg(long, default_value_t = Limits::default().max_quivers)]
    max_quivers: usize,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let opts = Opts::parse();
    let app = router(Limits { max_seeds: opts.max_seeds, max_quivers: opts.max_quivers });
    let listener = tokio::net::TcpListener::bind((opts.addr.as_str(), opts.port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app).await
}
