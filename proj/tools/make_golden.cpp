// Regenerates src/core/golden_data.cpp: solves the reference configuration
// (lambda1 = 20, lambda2 = 10, n = 64) and prints the frozen regression
// arrays. Run only after the analytic-oracle and refinement tests pass:
//
//   ./backstep_make_golden > ../src/core/golden_data.cpp

#include "core/golden_data.hpp"
#include "core/kernel_families.hpp"

#include <cstdio>
#include <vector>

using namespace backstep;

namespace {

void print_array(const char* name, const char* size_expr, const std::vector<double>& v) {
    std::printf("const std::array<double, %s> %s = {{\n", size_expr, name);
    for (std::size_t k = 0; k < v.size(); ++k)
        std::printf("    %.17g,\n", v[k]);
    std::printf("}};\n\n");
}

} // namespace

int main() {
    KernelOptions opt;
    opt.n = golden::kN;

    const KernelField control = control_kernel(20.0, 10.0, opt);
    const KernelField col = observer_kernel_collocated(20.0, 10.0, opt);
    const GainSet fb = extract_gains(control, ObserverSetup::AntiCollocated);
    const GainSet pc = extract_gains(col, ObserverSetup::Collocated);

    std::vector<double> suu, suv;
    for (int i = 0; i <= golden::kN; i += golden::kSurfStride)
        for (int j = 0; j <= i; j += golden::kSurfStride) {
            suu.push_back(control.Kuu.at(i, j));
            suv.push_back(control.Kuv.at(i, j));
        }

    std::printf("#include \"golden_data.hpp\"\n\n");
    std::printf("// Generated by tools/make_golden (lambda1 = 20, lambda2 = 10, n = %d,\n", golden::kN);
    std::printf("// tol = 1e-12). Do not edit by hand.\n");
    std::printf("namespace backstep::golden {\n\n");
    print_array("control_gain_uu", "kN + 1", fb.fb_uu);
    print_array("control_gain_uv", "kN + 1", fb.fb_uv);
    print_array("control_surface_uu", "kSurfCount", suu);
    print_array("control_surface_uv", "kSurfCount", suv);
    print_array("collocated_p1", "kN + 1", pc.p1);
    print_array("collocated_p2", "kN + 1", pc.p2);
    std::printf("} // namespace backstep::golden\n");
    return 0;
}
