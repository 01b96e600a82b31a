#include "builtin_primes.hpp"

#include "modmath.hpp"

namespace ef {
namespace {

struct Entry {
    unsigned bits;
    const char* decimal;
};

// Least safe prime of each commonly-used exact bit size. Each value was found
// by the same ascending search smallest_safe_prime() performs and is
// re-verified by the self test; the constants only save startup time.
constexpr Entry kBuiltin[] = {
    {16, "32843"},
    {32, "2147483783"},
    {48, "140737488356903"},
    {64, "9223372036854778487"},
    {80, "604462909807314587353439"},
    {96, "39614081257132168796771989127"},
    {112, "2596148429267413814265248164615847"},
    {128, "170141183460469231731687303715884114527"},
    {160, "730750818665451459101842416358141509827966274143"},
    {256, "5789604461865809771178549250434395392663499233282028201972879200395656"
          "5016447"},
    {260, "9263367138985295633885678800695032628261598773251245123156606720633050"
          "37172363"},
    {512, "6703903964971298549787012499102923063739682910296196688861780721860882"
          "0150367734884009371490834517138450159290932430254268769414059732849732"
          "16824503043347"},
    {1024, "8988465674311579538646525953945123668089884894711532863671504057886633"
           "7902750481566354238661203768010560056939935696678829394884407208311246"
           "4237153197370621888839467124327426381511098006230470597265414760425028"
           "8441907534117123144073695655527041361858167525534229314911997362296923"
           "9858152417678164812113740223"},
    {2048, "1615850303565550365035743834433497598022205133485774201606517271376232"
           "7569433945446598600705761456731844358980460949009747059779575245460547"
           "5440761932241415603154386836504980458750988751948260533980288191920337"
           "8413839610932130987808091904716923808523529082292601815252144378794577"
           "0532904303776199561965192760957166694834171210342487393282284747428088"
           "0176631610290389028296655130963542301570751292964320885583629718018592"
           "3092867879917557615082295220184880661664361561356284235541010486257855"
           "0863465661734839271290328348967522998634176499319107762583194718667771"
           "801067716614802322659239302476074096777926805529798824879"},
};

} // namespace

BigUint builtin_safe_prime(unsigned bits) {
    for (const Entry& e : kBuiltin)
        if (e.bits == bits)
            return parse_biguint(e.decimal);
    return BigUint(0);
}

BigUint builtin_safe_prime_or_search(unsigned bits) {
    BigUint p = builtin_safe_prime(bits);
    if (sgn(p) != 0)
        return p;
    return modmath::smallest_safe_prime(bits);
}

} // namespace ef
