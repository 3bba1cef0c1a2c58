def register_commands(app):
    from app.commands.groups import bp as groups_bp
    from app.commands.complements import bp as complements_bp
    from app.commands.checks import bp as checks_bp

    app.register_blueprint(groups_bp)
    app.register_blueprint(complements_bp)
    app.register_blueprint(checks_bp)
