use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::Parser;
use tracing::{info, warn};

use qbra_service::{router, AppState, ServiceConfig};

#[derive(Parser)]
#[command(name = "qbra-service", about = "Serve the QBRA advisor over HTTP")]
struct Args {
    /// TOML config file; QBRA_* variables override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[tokio::main]
async fn main() {
    tracing_subscriber::fmt().with_env_filter(tracing_subscriber::EnvFilter::from_default_env()).init();
    let args = Args::parse();
    let config = match ServiceConfig::load(args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let state = Arc::new(AppState::new(config.clone()));
    match state.advisor() {
        Ok(a) => info!(version = a.version(), "fixtures loaded"),
        Err(e) => warn!("fixtures failed to load, serving 503: {e}"),
    }

    let sweeper = Arc::clone(&state);
    let period = config.session_ttl().clamp(Duration::from_secs(1), Duration::from_secs(60));
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(period);
        loop {
            tick.tick().await;
            let gone = sweeper.evict_expired();
            if gone > 0 {
                info!(gone, "evicted idle sessions");
            }
        }
    });

    #[cfg(unix)]
    {
        let reloader = Arc::clone(&state);
        tokio::spawn(async move {
            use tokio::signal::unix::{signal, SignalKind};
            let Ok(mut hup) = signal(SignalKind::hangup()) else { return };
            while hup.recv().await.is_some() {
                match reloader.reload() {
                    Ok(version) => info!(version, "fixtures reloaded"),
                    Err(e) => warn!("reload failed, keeping current fixtures: {e}"),
                }
            }
        });
    }

    let listener = match tokio::net::TcpListener::bind(&config.bind_address).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: cannot bind {}: {e}", config.bind_address);
            std::process::exit(2);
        }
    };
    info!(address = %config.bind_address, "listening");
    let shutdown = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    if let Err(e) = axum::serve(listener, router(state)).with_graceful_shutdown(shutdown).await {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
