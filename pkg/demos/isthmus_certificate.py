"""Build an isthmus graph from its path data and certify it."""
from pergraph.catalog import middle_isthmus_spec
from pergraph.certify import certify_isthmus, verify_isthmus_identities
from pergraph.graph import build_isthmus

g = build_isthmus(middle_isthmus_spec())
print(f"{len(g.vertices)} vertices, {len(g.edges)} edge orbits")

ident = verify_isthmus_identities(g)
print("determinant identities:", ident.verdict)

cert = certify_isthmus(g)
for claim in cert.claims:
    print(f"  {claim.name}: {claim.verdict}")
print(cert.to_json()[:400], "...")
