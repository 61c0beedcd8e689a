from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from app.api import spectra  # Import the spectra router
from app.utils.exceptions import BaseSpectraError, create_error_response, log_exception
import logging
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

app = FastAPI(
    title="Multicone Spectra API",
    description="Spectra, cospectrality and perfectness of multicone graphs",
    version="1.0.0"
)

# Get port from environment for Railway deployment
port = int(os.getenv("PORT", 8000))

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:3000", "http://localhost:5173", "*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(BaseSpectraError)
async def spectra_error_handler(request: Request, exc: BaseSpectraError):
    log_exception(logger, exc, request.url.path)
    return JSONResponse(status_code=exc.status_code, content=create_error_response(exc))


# Include API routers
app.include_router(spectra.router)

@app.get("/")
def root():
    return {
        "message": "Multicone Spectra API",
        "status": "running",
        "version": "1.0.0"
    }

@app.get("/health")
def health_check():
    return {
        "status": "healthy",
        "environment": os.getenv("ENV", "development"),
    }
