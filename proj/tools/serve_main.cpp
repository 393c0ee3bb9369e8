#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "sed/errors.hpp"
#include "sed/service.hpp"

namespace {
sed::WorkbenchService* running = nullptr;
void on_signal(int) {
    if (running) running->stop();
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serve analyst sessions over HTTP", "sed-serve"};
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string dir = "sessions";
    app.add_option("--bind", host, "Address to listen on");
    app.add_option("--port", port)->check(CLI::Range(1, 65535));
    app.add_option("--dir", dir, "Session directory");
    CLI11_PARSE(app, argc, argv);

    try {
        sed::WorkbenchService service(dir);
        running = &service;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cerr << "serving " << dir << " on " << host << ":" << port << "\n";
        service.serve(host, port);
    } catch (const sed::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
