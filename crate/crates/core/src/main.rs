fn main() {
    let threads = std::env::var("PROBEKIT_THREADS").ok().and_then(|v| v.parse().ok());
    probekit::exec::init_thread_pool(threads);
    std::process::exit(probekit::cli::run(std::env::args()));
}
