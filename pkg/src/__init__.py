# Directed λ-θ geometric spanners and local routing
