"""
Tour of the card catalog
========================

The deck that ships with the package: 14 AI-powered businesses, 13 societal
harms, 7 mitigation features, and the educator guide excerpts. Everything in
the rules keys on integer ids; colors and shapes only decorate the physical
cards.
"""

from ai_audit import (
    can_counter,
    default_catalog,
    guide_excerpt,
    legal_harms,
    validate,
)

catalog = default_catalog()

print("businesses:")
for business in catalog.businesses:
    harms = ", ".join(str(h) for h in sorted(business.vulnerable_harms))
    print(f"  {business.id:>2}. {business.title[:60]:62} harms: {harms}")

print("\nharms:")
for harm in catalog.harms:
    print(f"  {harm.id:>2}. [{harm.color}/{harm.shape}] {harm.title[:66]}")

print("\nfeatures:")
for feature in catalog.features:
    counters = ", ".join(str(h) for h in sorted(feature.counters))
    print(f"  {feature.id}. {feature.title[:60]:62} counters: {counters}")

# The legality relations the engine enforces:
print("\nbusiness 3 can be challenged with harms:", sorted(legal_harms(catalog, 3)))
print("feature 2 counters harm 5?", can_counter(catalog, 2, 5))
print("feature 2 counters harm 1?", can_counter(catalog, 2, 1))

# The validator flags data quirks. The stock deck carries exactly one: harm 9
# (misdiagnosis) appears on no business card, so it can never be played as a
# regular challenge.
report = validate(catalog)
print("\nvalidation findings:")
for line in report.lines():
    print(" ", line)

# Guide excerpts give educators real-world grounding for a pairing.
print("\nguide for (hiring algorithms, algorithmic bias):")
print(" ", guide_excerpt(catalog, 4, 8)[:120], "...")
