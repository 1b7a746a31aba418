"""HTTP wrapper around the engine; see app.create_app."""
