// Writes calibration/pps_tau.json: for each phi the smallest horizon after
// which every start state reaches step 0 with probability at least
// 1/(2 phi) + margin, computed from exact powers of the transition matrix.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sslcl/pps.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Calibrate the phase-start horizon tau of the synchronization chain"};
    std::string output = std::string(SSLCL_CALIBRATION_DIR) + "/pps_tau.json";
    double margin = 0.01;
    int phi_min = 3;
    int phi_max = 8;
    app.add_option("--output", output, "output file");
    app.add_option("--margin", margin, "required excess over 1/(2 phi)");
    app.add_option("--phi-min", phi_min);
    app.add_option("--phi-max", phi_max);
    CLI11_PARSE(app, argc, argv);

    nlohmann::ordered_json doc;
    doc["margin"] = margin;
    for (int phi = phi_min; phi <= phi_max; ++phi) {
        doc["tau"][std::to_string(phi)] = sslcl::calibrate_tau(phi, margin);
    }
    std::ofstream out(output);
    if (!out) {
        std::cerr << "cannot write " << output << "\n";
        return 1;
    }
    out << doc.dump(2) << "\n";
    std::cout << doc.dump() << "\n";
    return 0;
}
