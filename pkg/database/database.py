"""
Database connection and session management for verification runs.
Uses SQLAlchemy with async support.

Supports:
- SQLite (via aiosqlite) - default, a local file next to the working directory
- any other async SQLAlchemy URL; postgres:// is normalized to the async driver
"""

import logging
from typing import AsyncGenerator, Optional
from contextlib import asynccontextmanager
from sqlalchemy.ext.asyncio import (
    AsyncEngine,
    AsyncSession,
    async_sessionmaker,
    create_async_engine
)

from .base_models import Base

logger = logging.getLogger(__name__)

DEFAULT_DATABASE_URL = 'sqlite+aiosqlite:///./verification_runs.db'

# Engine is created on first use, so importing the package never opens a connection
engine: Optional[AsyncEngine] = None
async_session_maker: Optional[async_sessionmaker] = None


def normalize_url(url: str) -> str:
    """Convert postgres:// and postgresql:// to postgresql+asyncpg:// (Railway/Heroku style URLs)."""
    if url.startswith('postgres://'):
        url = url.replace('postgres://', 'postgresql+asyncpg://', 1)
        logger.info("Converted postgres:// to postgresql+asyncpg://")
    elif url.startswith('postgresql://') and '+asyncpg' not in url:
        url = url.replace('postgresql://', 'postgresql+asyncpg://', 1)
        logger.info("Converted postgresql:// to postgresql+asyncpg://")
    elif url.startswith('sqlite://') and '+aiosqlite' not in url:
        url = url.replace('sqlite://', 'sqlite+aiosqlite://', 1)
    return url


def init_engine(url: Optional[str] = None) -> AsyncEngine:
    """Create (or replace) the engine and session factory for the given URL."""
    global engine, async_session_maker
    url = normalize_url(url or DEFAULT_DATABASE_URL)
    engine = create_async_engine(url, echo=False, future=True)
    async_session_maker = async_sessionmaker(
        engine,
        class_=AsyncSession,
        expire_on_commit=False
    )
    logger.info(f"🔄 Database engine ready: {engine.url.render_as_string(hide_password=True)}")
    return engine


@asynccontextmanager
async def get_session() -> AsyncGenerator[AsyncSession, None]:
    """
    Get database session as async context manager.

    Usage:
        async with get_session() as session:
            # Your database operations
            pass
    """
    if async_session_maker is None:
        init_engine()
    async with async_session_maker() as session:
        try:
            yield session
            await session.commit()
        except Exception:
            await session.rollback()
            raise


async def init_db(url: Optional[str] = None) -> None:
    """
    Initialize database: create all tables.

    IMPORTANT: All models must be imported before calling this function
    to ensure they are registered in Base.metadata.
    """
    logger.info("Initializing database...")
    try:
        from . import models  # noqa: F401 - Import to register models

        if url is not None or engine is None:
            init_engine(url)
        async with engine.begin() as conn:
            await conn.run_sync(Base.metadata.create_all)
        logger.info("✅ Database initialized successfully")
    except Exception as e:
        logger.error(f"❌ ERROR in init_db(): {e}")
        raise


async def close_db() -> None:
    """
    Close database connection.
    Should be called when the command finishes.
    """
    global engine, async_session_maker
    if engine is None:
        return
    logger.info("Closing database connection...")
    try:
        await engine.dispose()
        logger.info("Database connection closed")
    except Exception as e:
        logger.error(f"❌ ERROR in close_db(): {e}")
    finally:
        engine = None
        async_session_maker = None
