#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gl2den/curves.hpp"
#include "gl2den/density.hpp"

#include <sstream>

namespace py = pybind11;
using namespace gl2den;

namespace pybind11 {
namespace detail {

// boost::rational <-> fractions.Fraction, so densities stay exact in python.
template <>
struct type_caster<Fraction> {
public:
    PYBIND11_TYPE_CASTER(Fraction, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (isinstance<int_>(src)) {
            value = Fraction(src.cast<long long>());
            return true;
        }
        if (hasattr(src, "numerator") && hasattr(src, "denominator")) {
            value = Fraction(src.attr("numerator").cast<long long>(),
                             src.attr("denominator").cast<long long>());
            return true;
        }
        return false;
    }

    static handle cast(const Fraction& q, return_value_policy, handle) {
        object cls = module_::import("fractions").attr("Fraction");
        return cls(q.numerator(), q.denominator()).release();
    }
};

template <>
struct type_caster<BigInt> {
public:
    PYBIND11_TYPE_CASTER(BigInt, const_name("int"));

    bool load(handle src, bool) {
        if (!isinstance<int_>(src)) return false;
        value = BigInt(str(src).cast<std::string>());
        return true;
    }

    static handle cast(const BigInt& v, return_value_policy, handle) {
        return PyLong_FromString(v.str().c_str(), nullptr, 10);
    }
};

}  // namespace detail
}  // namespace pybind11

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact eigenvalue proportions for subgroups of GL2(F_ell) and local densities of "
              "elliptic curves over Q";

    m.def("is_prime", &is_prime, py::arg("n"));
    m.def("pow_mod", &pow_mod, py::arg("base"), py::arg("exp"), py::arg("mod"));
    m.def("legendre_symbol", &legendre_symbol, py::arg("a"), py::arg("p"),
          "Legendre symbol (a|p) in {-1, 0, 1} for an odd prime p");
    m.def(
        "canonical_nonresidue",
        [](std::uint32_t ell) { return canonical_nonresidue(PrimeModulus(ell)).value(); },
        py::arg("ell"), "smallest positive non-residue mod an odd prime");

    py::class_<Matrix2>(m, "Matrix2")
        .def(py::init([](std::uint32_t ell, std::int64_t a, std::int64_t b, std::int64_t c,
                         std::int64_t d) {
                 return Matrix2::from_values(PrimeModulus(ell), a, b, c, d);
             }),
             py::arg("ell"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
        .def_static("parse", &Matrix2::parse, py::arg("text"),
                    "parse \"[[a,b],[c,d]] mod ell\"")
        .def_static(
            "identity", [](std::uint32_t ell) { return Matrix2::identity(PrimeModulus(ell)); },
            py::arg("ell"))
        .def_property_readonly("ell", &Matrix2::ell)
        .def_property_readonly("entries",
                               [](const Matrix2& g) {
                                   return py::make_tuple(g.entry(0), g.entry(1), g.entry(2),
                                                         g.entry(3));
                               })
        .def("det", [](const Matrix2& g) { return g.det().value(); })
        .def("tr", [](const Matrix2& g) { return g.tr().value(); })
        .def("inverse", &Matrix2::inverse)
        .def("pow", &Matrix2::pow, py::arg("e"))
        .def("order", &Matrix2::order)
        .def("is_scalar", &Matrix2::is_scalar)
        .def("is_identity", &Matrix2::is_identity)
        .def("__mul__", [](const Matrix2& a, const Matrix2& b) { return a * b; })
        .def("__eq__", [](const Matrix2& a, const Matrix2& b) { return a == b; })
        .def("__hash__", [](const Matrix2& g) { return py::hash(py::make_tuple(g.ell(), g.key())); })
        .def("__repr__", &Matrix2::str)
        .def("__str__", &Matrix2::str);

    m.def(
        "discriminant", [](const Matrix2& g) { return discriminant(g).value(); }, py::arg("g"),
        "tr(g)^2 - 4 det(g) as a residue");
    m.def("chi", &chi, py::arg("g"), "quadratic character of the discriminant (odd ell)");
    m.def("in_I", &in_I, py::arg("g"), "g has an eigenvalue in F_ell");
    m.def("in_I1", &in_I1, py::arg("g"), "g has 1 as an eigenvalue");
    m.def("projective_order", &projective_order, py::arg("g"));
    m.def("gl2_order", &gl2_order, py::arg("ell"));
    m.def(
        "all_gl2", [](std::uint32_t ell) { return all_gl2(PrimeModulus(ell)); }, py::arg("ell"));

    py::enum_<ClassKind>(m, "ClassKind")
        .value("scalar", ClassKind::scalar)
        .value("nonsemisimple", ClassKind::nonsemisimple)
        .value("split", ClassKind::split)
        .value("nonsplit", ClassKind::nonsplit);

    py::class_<ClassDescriptor>(m, "ClassDescriptor")
        .def_readonly("kind", &ClassDescriptor::kind)
        .def_readonly("representative", &ClassDescriptor::representative)
        .def_readonly("parameters", &ClassDescriptor::parameters)
        .def_readonly("class_size", &ClassDescriptor::class_size)
        .def_readonly("eigenvalues", &ClassDescriptor::eigenvalues)
        .def("__repr__", [](const ClassDescriptor& c) {
            std::ostringstream os;
            os << "ClassDescriptor(" << to_string(c.kind) << ", rep=" << c.representative.str()
               << ", size=" << c.class_size << ")";
            return os.str();
        });

    m.def("classify_conjugacy", &classify_conjugacy, py::arg("g"));
    m.def(
        "enumerate_class_table",
        [](std::uint32_t ell) { return enumerate_class_table(PrimeModulus(ell)); },
        py::arg("ell"));

    py::class_<Subgroup>(m, "Subgroup")
        .def_static(
            "close",
            [](std::uint32_t ell, const std::vector<Matrix2>& gens) {
                return Subgroup::close(PrimeModulus(ell), gens);
            },
            py::arg("ell"), py::arg("generators"))
        .def_property_readonly("ell", &Subgroup::ell)
        .def_property_readonly("order", &Subgroup::order)
        .def_property_readonly("elements", &Subgroup::elements)
        .def_property_readonly("generators", &Subgroup::generators)
        .def_property_readonly("small_generators", &Subgroup::small_generators)
        .def("contains", &Subgroup::contains, py::arg("g"))
        .def("conjugated_by", &Subgroup::conjugated_by, py::arg("c"))
        .def("__eq__", [](const Subgroup& a, const Subgroup& b) { return a == b; })
        .def("__len__", &Subgroup::order)
        .def("__repr__", [](const Subgroup& g) {
            std::ostringstream os;
            os << "Subgroup(ell=" << g.ell() << ", order=" << g.order() << ")";
            return os.str();
        });

    m.def(
        "standard",
        [](const std::string& name, std::uint32_t ell) {
            auto which = standard_group_from_name(name);
            if (!which) throw std::invalid_argument("unknown standard group: " + name);
            return standard(*which, PrimeModulus(ell));
        },
        py::arg("name"), py::arg("ell"),
        "standard subgroup by name: Cs, Cns, Cs+, Cns+, B, B1, Z, SL2, GL2");
    m.def("load_subgroup_file", &load_subgroup_file, py::arg("path"));
    m.def(
        "parse_subgroup",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_subgroup_stream(in);
        },
        py::arg("text"), "parse the subgroup file format from a string");

    py::class_<ProjectiveImage>(m, "ProjectiveImage")
        .def_readonly("order", &ProjectiveImage::order)
        .def_readonly("element_order_counts", &ProjectiveImage::element_order_counts);
    m.def("projective_image", &projective_image, py::arg("g"));
    m.def("scalar_intersection_order", &scalar_intersection_order, py::arg("g"));
    m.def("is_conjugate_into", &is_conjugate_into, py::arg("g"), py::arg("h"),
          "a conjugator c with c g c^-1 inside h, or None");
    m.def("normalizer_order", &normalizer_order, py::arg("g"));

    py::enum_<DicksonType>(m, "DicksonType")
        .value("Cs", DicksonType::Cs)
        .value("Cn", DicksonType::Cn)
        .value("Ns", DicksonType::Ns)
        .value("Nn", DicksonType::Nn)
        .value("A4", DicksonType::A4)
        .value("S4", DicksonType::S4)
        .value("A5", DicksonType::A5)
        .value("B", DicksonType::B)
        .value("PSL", DicksonType::PSL)
        .value("PGL", DicksonType::PGL);

    py::class_<DicksonReport>(m, "DicksonReport")
        .def_readonly("type", &DicksonReport::type)
        .def_readonly("ell_divides_order", &DicksonReport::ell_divides_order)
        .def_readonly("projective_order", &DicksonReport::projective_order)
        .def_readonly("scalar_intersection_order", &DicksonReport::scalar_intersection_order)
        .def_readonly("conjugator", &DicksonReport::conjugator)
        .def("__repr__", [](const DicksonReport& r) {
            return "DicksonReport(type=" + to_string(r.type) + ")";
        });
    m.def("dickson_type", &dickson_type, py::arg("g"));

    py::enum_<DensityMethod>(m, "DensityMethod")
        .value("brute_force", DensityMethod::brute_force)
        .value("closed_form", DensityMethod::closed_form);

    py::class_<DensityPair>(m, "DensityPair")
        .def_readonly("f1", &DensityPair::f1)
        .def_readonly("f", &DensityPair::f)
        .def_readonly("method", &DensityPair::method)
        .def_readonly("group_order", &DensityPair::group_order)
        .def("__repr__", [](const DensityPair& d) {
            return "DensityPair(f1=" + to_string(d.f1) + ", f=" + to_string(d.f) + ")";
        });
    m.def("compute_densities", &compute_densities, py::arg("g"));

    py::enum_<ClosedFormFamily>(m, "ClosedFormFamily")
        .value("Cns_contained", ClosedFormFamily::Cns_contained)
        .value("SL2", ClosedFormFamily::SL2)
        .value("GL2", ClosedFormFamily::GL2);
    m.def(
        "closed_form_F",
        [](ClosedFormFamily family, std::uint32_t ell) {
            return closed_form_F(family, PrimeModulus(ell));
        },
        py::arg("family"), py::arg("ell"));
    m.def(
        "closed_form_F",
        [](ClosedFormFamily family, const Subgroup& g) { return closed_form_F(family, g); },
        py::arg("family"), py::arg("g"));
    m.def(
        "closed_form_F1_GL2",
        [](std::uint32_t ell) { return closed_form_F1_GL2(PrimeModulus(ell)); }, py::arg("ell"));

    py::class_<ValuePrediction>(m, "ValuePrediction")
        .def_readonly("f_values", &ValuePrediction::f_values)
        .def_readonly("f1_bound", &ValuePrediction::f1_bound);
    m.def("predicted_value_set", &predicted_value_set, py::arg("report"), py::arg("g"));

    py::class_<GapViolation>(m, "GapViolation")
        .def_readonly("class_index", &GapViolation::class_index)
        .def_readonly("which", &GapViolation::which)
        .def_readonly("value", &GapViolation::value)
        .def_readonly("detail", &GapViolation::detail);

    py::class_<SubgroupRecord>(m, "SubgroupRecord")
        .def_readonly("order", &SubgroupRecord::order)
        .def_readonly("projective_order", &SubgroupRecord::projective_order)
        .def_readonly("scalar_order", &SubgroupRecord::scalar_order)
        .def_readonly("type", &SubgroupRecord::type)
        .def_readonly("f1", &SubgroupRecord::f1)
        .def_readonly("f", &SubgroupRecord::f)
        .def_readonly("predicted_f", &SubgroupRecord::predicted_f)
        .def_readonly("f1_bound", &SubgroupRecord::f1_bound)
        .def_readonly("pass_", &SubgroupRecord::pass);

    py::class_<GapReport>(m, "GapReport")
        .def_readonly("ell", &GapReport::ell)
        .def_readonly("threshold", &GapReport::threshold)
        .def_readonly("classes_checked", &GapReport::classes_checked)
        .def_readonly("records", &GapReport::records)
        .def_readonly("violations", &GapReport::violations)
        .def_readonly("realized_f", &GapReport::realized_f)
        .def("passed", &GapReport::pass);

    py::class_<IdentitySuite>(m, "IdentitySuite")
        .def_readonly("name", &IdentitySuite::name)
        .def_readonly("checks", &IdentitySuite::checks)
        .def_readonly("failures", &IdentitySuite::failures);

    py::class_<LemmaIdentityReport>(m, "LemmaIdentityReport")
        .def_readonly("ell", &LemmaIdentityReport::ell)
        .def_readonly("suites", &LemmaIdentityReport::suites)
        .def_readonly("failure_details", &LemmaIdentityReport::failure_details)
        .def("passed", &LemmaIdentityReport::pass)
        .def("total_checks", &LemmaIdentityReport::total_checks);

    auto enum_config = [](std::uint32_t max_ell, unsigned threads) {
        EnumerationConfig cfg;
        cfg.max_ell = max_ell;
        cfg.threads = threads;
        return cfg;
    };
    m.def(
        "enumerate_up_to_conjugacy",
        [enum_config](std::uint32_t ell, std::uint32_t max_ell, unsigned threads) {
            return enumerate_up_to_conjugacy(PrimeModulus(ell), enum_config(max_ell, threads));
        },
        py::arg("ell"), py::arg("max_ell") = 7, py::arg("threads") = 1);
    m.def(
        "all_subgroups", [](std::uint32_t ell) { return all_subgroups(PrimeModulus(ell)); },
        py::arg("ell"), "every subgroup, not up to conjugacy (ell <= 3)");
    m.def(
        "total_subgroup_count",
        [](std::uint32_t ell) { return total_subgroup_count(PrimeModulus(ell)); }, py::arg("ell"));
    m.def(
        "verify_gap",
        [enum_config](std::uint32_t ell, std::uint32_t max_ell, unsigned threads) {
            return verify_gap(PrimeModulus(ell), enum_config(max_ell, threads));
        },
        py::arg("ell"), py::arg("max_ell") = 7, py::arg("threads") = 1);
    m.def(
        "verify_lemma_identities",
        [enum_config](std::uint32_t ell, std::uint32_t max_ell, unsigned threads) {
            return verify_lemma_identities(PrimeModulus(ell), enum_config(max_ell, threads));
        },
        py::arg("ell"), py::arg("max_ell") = 7, py::arg("threads") = 1);

    py::class_<CurveQ>(m, "CurveQ")
        .def(py::init(&CurveQ::make), py::arg("a1"), py::arg("a2"), py::arg("a3"), py::arg("a4"),
             py::arg("a6"))
        .def_static("parse", &CurveQ::parse, py::arg("text"))
        .def_readonly("a1", &CurveQ::a1)
        .def_readonly("a2", &CurveQ::a2)
        .def_readonly("a3", &CurveQ::a3)
        .def_readonly("a4", &CurveQ::a4)
        .def_readonly("a6", &CurveQ::a6)
        .def_readonly("discriminant", &CurveQ::discriminant)
        .def("good_reduction", &CurveQ::good_reduction, py::arg("p"))
        .def("__repr__", [](const CurveQ& e) { return "CurveQ(" + e.str() + ")"; });

    m.def("count_points", &count_points, py::arg("curve"), py::arg("p"));
    m.def("count_points_naive", &count_points_naive, py::arg("curve"), py::arg("p"));
    m.def("trace_of_frobenius", &trace_of_frobenius, py::arg("curve"), py::arg("p"));

    py::class_<LocalCondition>(m, "LocalCondition")
        .def_readonly("in_S1", &LocalCondition::in_S1)
        .def_readonly("in_S", &LocalCondition::in_S);
    m.def("local_conditions", &local_conditions, py::arg("curve"), py::arg("p"), py::arg("ell"));

    py::class_<PrimeRecord>(m, "PrimeRecord")
        .def_readonly("p", &PrimeRecord::p)
        .def_readonly("ap", &PrimeRecord::ap)
        .def_readonly("in_S1", &PrimeRecord::in_S1)
        .def_readonly("in_S", &PrimeRecord::in_S);

    py::class_<CurveScan>(m, "CurveScan")
        .def_readonly("curve", &CurveScan::curve)
        .def_readonly("ell", &CurveScan::ell)
        .def_readonly("limit", &CurveScan::limit)
        .def_readonly("good_primes", &CurveScan::good_primes)
        .def_readonly("hits_torsion", &CurveScan::hits_torsion)
        .def_readonly("hits_isogeny", &CurveScan::hits_isogeny)
        .def_readonly("records", &CurveScan::records)
        .def("density_s1", &CurveScan::density_s1)
        .def("density_s", &CurveScan::density_s);
    m.def(
        "scan",
        [](const CurveQ& e, std::uint32_t ell, std::uint64_t limit, unsigned threads) {
            ScanConfig cfg;
            cfg.threads = threads;
            return scan(e, ell, limit, cfg);
        },
        py::arg("curve"), py::arg("ell"), py::arg("limit") = 10000, py::arg("threads") = 1);
    m.def("primes_up_to", &primes_up_to, py::arg("limit"));

    m.attr("__version__") = "0.1.0";
}
