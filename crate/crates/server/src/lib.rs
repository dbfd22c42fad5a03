// SPDX-License-Identifier: Apache-2.0

//! HTTP data service for molecular documents: content-addressed storage on
//! the filesystem, metadata extraction, search, and on-the-fly format
//! conversion.

pub mod auth;
pub mod config;
pub mod http;
pub mod metadata;
pub mod service;
pub mod store;

use std::future::Future;
use std::io;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::Router;
use tokio::net::TcpListener;

pub use auth::BearerToken;
pub use config::ServerConfig;
pub use metadata::{extract_metadata, Metadata};
pub use service::Service;
pub use store::{content_id, FsStore, MoleculeStore, OpenReport, StoredMolecule};

/// Opens the store and builds the router.
pub fn build(config: &ServerConfig) -> io::Result<(Router, OpenReport)> {
    let token = BearerToken::new(config.token.clone())
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "bearer token must not be empty"))?;
    let (store, report) = FsStore::open(&config.data_dir).map_err(io::Error::other)?;
    let state = http::AppState {
        service: Arc::new(Service::new(Arc::new(store))),
        token,
    };
    Ok((http::router(state, config.body_limit), report))
}

/// A bound server, ready to run.
pub struct Bound {
    listener: TcpListener,
    router: Router,
    pub report: OpenReport,
}

impl Bound {
    pub fn local_addr(&self) -> io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    pub async fn run(self, shutdown: impl Future<Output = ()> + Send + 'static) -> io::Result<()> {
        axum::serve(self.listener, self.router)
            .with_graceful_shutdown(shutdown)
            .await
    }
}

pub async fn bind(config: &ServerConfig) -> io::Result<Bound> {
    let (router, report) = build(config)?;
    let listener = TcpListener::bind(config.listen).await?;
    tracing::info!(
        addr = %listener.local_addr()?,
        records = report.records,
        rebuilt = report.rebuilt,
        "store opened"
    );
    Ok(Bound {
        listener,
        router,
        report,
    })
}
