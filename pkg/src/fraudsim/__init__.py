"""fraudsim: a gamified stock-market simulator for investment-fraud awareness.

Subpackages:
  simkit      - seeded market world: stocks, fraud price scripts, news, chat
  session     - portfolio accounting, telemetry events, digital footprints
  mlcore      - from-scratch numerics: PCA, k-means, trees, boosting, MLP
  personalize - investor-type prediction and knowledge-pool resource selection
  analytics   - synthetic cohorts, descriptive/inferential stats, insight reports
  server      - HTTP/JSON service, headless bots, command-line interface
"""

__version__ = "0.1.0"
